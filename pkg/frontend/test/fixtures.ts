/** Frozen service responses for the weighted-triangle example (captured from
 * the live service; the backend test suite pins these same values). */

import type { SessionState } from "../src/types.js";

export const EXAMPLE_DOCUMENT = {
  sp: {
    prime: 3,
    base_degree: 1,
    quiver: {
      weights: [1, 1, 2],
      arrows: [
        { id: "u", from: 2, to: 1 },
        { id: "w", from: 3, to: 2 },
        { id: "t", from: 1, to: 3 },
      ],
    },
    potential: {
      truncation: 8,
      truncated: false,
      terms: [{ coeff: 1, arrows: ["t", "u", "w"], omegas: [0, 0, 0, 0] }],
    },
  },
};

export const INITIAL_STATE: SessionState = {
  id: "fixture-session",
  prime: 3,
  base_degree: 1,
  truncation: 8,
  vertices: 3,
  weights: [1, 1, 2],
  quiver: {
    weights: [1, 1, 2],
    arrows: [
      { id: "u", from: 2, to: 1 },
      { id: "w", from: 3, to: 2 },
      { id: "t", from: 1, to: 3 },
    ],
  },
  matrix: { rows: [[0, 1, -2], [-1, 0, 2], [1, -1, 0]], symmetrizer: [1, 1, 2] },
  potential: {
    truncation: 8,
    truncated: false,
    terms: [{ coeff: 1, arrows: ["t", "u", "w"], omegas: [0, 0, 0, 0] }],
  },
  two_acyclic: true,
  history: 1,
  can_undo: false,
  last_step: null,
  search: null,
};

export const MUTATED_STATE: SessionState = {
  id: "fixture-session",
  prime: 3,
  base_degree: 1,
  truncation: 8,
  vertices: 3,
  weights: [1, 1, 2],
  quiver: {
    weights: [1, 1, 2],
    arrows: [
      { id: "[w.1.t]", from: 1, to: 2 },
      { id: "t*", from: 3, to: 1 },
      { id: "w*", from: 2, to: 3 },
    ],
  },
  matrix: { rows: [[0, -1, 2], [1, 0, -2], [-1, 1, 0]], symmetrizer: [1, 1, 2] },
  potential: {
    truncation: 8,
    truncated: false,
    terms: [{ coeff: 2, arrows: ["[w.1.t]", "t*", "w*"], omegas: [0, 0, 1, 0] }],
  },
  two_acyclic: true,
  history: 2,
  can_undo: true,
  last_step: {
    vertex: 3,
    removed_pairs: [["u", "[w.0.t]"]],
    correction_rounds: 1,
    hit_truncation: false,
    residual_2cycles: [],
    clean: true,
  },
  search: null,
};

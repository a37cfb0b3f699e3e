/** ViewState: a pure projection of the service's session state into exactly
 * what the renderer draws.  No mutation arithmetic happens here — counts,
 * matrices and potentials are taken verbatim from the service response. */

import { circlePositions } from "./layout.js";
import type {
  CoeffJson,
  MatrixJson,
  PotentialJson,
  PotentialTermJson,
  SearchBadgeJson,
  SessionState,
  StepReportJson,
} from "./types.js";

export interface ViewVertex {
  index: number;
  weight: number;
  x: number;
  y: number;
}

export interface ViewArc {
  from: number;
  to: number;
  count: number;
  ids: string[];
}

export interface LengthCount {
  length: number;
  count: number;
}

export interface PotentialSummary {
  termCount: number;
  byLength: LengthCount[];
  truncated: boolean;
  truncation: number;
  leading: string[];
}

export interface ViewState {
  sessionId: string;
  prime: number;
  baseDegree: number;
  truncation: number;
  vertices: ViewVertex[];
  arcs: ViewArc[];
  matrix: MatrixJson | null;
  twoAcyclic: boolean;
  potential: PotentialSummary;
  potentialJson: string;
  log: string[];
  canUndo: boolean;
  lastStep: StepReportJson | null;
  badge: SearchBadgeJson | null;
}

export function formatCoeff(coeff: CoeffJson): string {
  return typeof coeff === "number" ? String(coeff) : `(${coeff.join(",")})`;
}

/** One potential term as text: decorations v^m interleaved with arrow ids,
 * e.g. "2·[w.1.t]·t*·v·w*".  A coefficient of plain 1 is dropped. */
export function formatTerm(term: PotentialTermJson): string {
  const tokens: string[] = [];
  for (let slot = 0; slot <= term.arrows.length; slot++) {
    const omega = term.omegas[slot] ?? 0;
    if (omega > 0) tokens.push(omega === 1 ? "v" : `v^${omega}`);
    if (slot < term.arrows.length) tokens.push(term.arrows[slot] ?? "?");
  }
  const path = tokens.join("·");
  return term.coeff === 1 ? path : `${formatCoeff(term.coeff)}·${path}`;
}

export function summarizePotential(potential: PotentialJson): PotentialSummary {
  const byLength = new Map<number, number>();
  for (const term of potential.terms) {
    byLength.set(term.arrows.length, (byLength.get(term.arrows.length) ?? 0) + 1);
  }
  return {
    termCount: potential.terms.length,
    byLength: [...byLength.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([length, count]) => ({ length, count })),
    truncated: potential.truncated,
    truncation: potential.truncation,
    leading: potential.terms.slice(0, 3).map(formatTerm),
  };
}

function bundleArcs(state: SessionState): ViewArc[] {
  const bundles = new Map<string, ViewArc>();
  for (const arrow of state.quiver.arrows) {
    const key = `${arrow.from}>${arrow.to}`;
    const bundle = bundles.get(key);
    if (bundle) {
      bundle.count += 1;
      bundle.ids.push(arrow.id);
    } else {
      bundles.set(key, { from: arrow.from, to: arrow.to, count: 1, ids: [arrow.id] });
    }
  }
  const arcs = [...bundles.values()];
  for (const arc of arcs) arc.ids.sort();
  arcs.sort((a, b) => a.from - b.from || a.to - b.to);
  return arcs;
}

/**
 * Project a service state (plus the client-side step log, which mirrors the
 * service history stack one-to-one) into the render model.  Deterministic:
 * equal inputs serialize to identical JSON.
 */
export function project(state: SessionState, log: readonly string[]): ViewState {
  const positions = circlePositions(state.vertices);
  return {
    sessionId: state.id,
    prime: state.prime,
    baseDegree: state.base_degree,
    truncation: state.truncation,
    vertices: state.weights.map((weight, i) => ({
      index: i + 1,
      weight,
      x: positions[i]?.x ?? 0,
      y: positions[i]?.y ?? 0,
    })),
    arcs: bundleArcs(state),
    matrix: state.matrix,
    twoAcyclic: state.two_acyclic,
    potential: summarizePotential(state.potential),
    potentialJson: JSON.stringify(state.potential, null, 2),
    log: [...log],
    canUndo: state.can_undo,
    lastStep: state.last_step,
    badge: state.search,
  };
}

/** Human line for the sequence log. */
export function describeStep(step: StepReportJson): string {
  const bits = [`μ${step.vertex}`];
  if (step.removed_pairs.length > 0) {
    bits.push(`removed ${step.removed_pairs.map((p) => `(${p.join(",")})`).join(" ")}`);
  }
  if (!step.clean) {
    const cycles = step.residual_2cycles
      .map(([pair, count]) => `{${pair.join(",")}}×${count}`)
      .join(" ");
    bits.push(`degenerate: 2-cycles ${cycles}`.trim());
  }
  if (step.hit_truncation) bits.push("hit truncation");
  return bits.join(" — ");
}

export function describeSearch(badge: SearchBadgeJson): string {
  return `witness for (${badge.sequence.join(",")}): degree ${badge.base_degree}, ` +
    `attempt ${badge.attempt} of ${badge.attempts}`;
}

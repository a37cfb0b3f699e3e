/** JSON shapes exchanged with the mutation service (mirrored verbatim). */

export interface ArrowJson {
  id: string;
  from: number;
  to: number;
}

export interface QuiverJson {
  weights: number[];
  arrows: ArrowJson[];
}

export interface MatrixJson {
  rows: number[][];
  symmetrizer: number[];
}

/** Base-field scalar: an integer for prime fields, coefficient list otherwise. */
export type CoeffJson = number | number[];

export interface PotentialTermJson {
  coeff: CoeffJson;
  arrows: string[];
  omegas: number[];
}

export interface PotentialJson {
  truncation: number;
  truncated: boolean;
  terms: PotentialTermJson[];
}

export interface StepReportJson {
  vertex: number;
  removed_pairs: string[][];
  correction_rounds: number;
  hit_truncation: boolean;
  residual_2cycles: [number[], number][];
  clean: boolean;
}

export interface SearchBadgeJson {
  found: boolean;
  sequence: number[];
  seed: number | string;
  attempt: number;
  attempts: number;
  base_degree: number;
  rungs: number[];
}

export interface SessionState {
  id: string;
  prime: number;
  base_degree: number;
  truncation: number;
  vertices: number;
  weights: number[];
  quiver: QuiverJson;
  matrix: MatrixJson | null;
  potential: PotentialJson;
  two_acyclic: boolean;
  history: number;
  can_undo: boolean;
  last_step: StepReportJson | null;
  search: SearchBadgeJson | null;
}

export interface SearchRequest {
  sequence: number[];
  budget?: number;
  seed?: number | string;
  max_ext?: number;
  max_cycle_length?: number | null;
}

export interface SearchResponse {
  result: { found: boolean; attempts: number; [key: string]: unknown };
  state: SessionState;
}

export interface ErrorBody {
  error: { code: string; message: string };
}

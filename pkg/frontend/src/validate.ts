/** Structural validation of a user-pasted session document, so schema
 * mistakes are surfaced inline before anything is sent to the service.
 * Mathematical validity (skew-symmetrizability, admissible primes, potential
 * cyclicity) is the service's job and its errors are shown verbatim. */

export interface ValidationResult {
  ok: boolean;
  problems: string[];
}

function isObject(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function isInt(v: unknown): v is number {
  return typeof v === "number" && Number.isInteger(v);
}

function checkWeights(weights: unknown, problems: string[]): number {
  if (!Array.isArray(weights) || weights.length === 0) {
    problems.push("weights must be a non-empty array");
    return 0;
  }
  weights.forEach((w, i) => {
    if (!isInt(w) || w < 1) {
      problems.push(`weights[${i}] must be a positive integer`);
    }
  });
  return weights.length;
}

function checkQuiver(quiver: unknown, problems: string[]): void {
  if (!isObject(quiver)) {
    problems.push("quiver must be an object");
    return;
  }
  const n = checkWeights(quiver.weights, problems);
  if (!Array.isArray(quiver.arrows)) {
    problems.push("quiver.arrows must be an array");
    return;
  }
  const seen = new Set<string>();
  quiver.arrows.forEach((arrow, i) => {
    if (!isObject(arrow)) {
      problems.push(`arrows[${i}] must be an object`);
      return;
    }
    if (typeof arrow.id !== "string" || arrow.id.length === 0) {
      problems.push(`arrows[${i}].id must be a non-empty string`);
    } else if (seen.has(arrow.id)) {
      problems.push(`duplicate arrow id "${arrow.id}"`);
    } else {
      seen.add(arrow.id);
    }
    for (const key of ["from", "to"] as const) {
      const v = arrow[key];
      if (!isInt(v) || v < 1 || (n > 0 && v > n)) {
        problems.push(`arrows[${i}].${key} must be a vertex between 1 and ${n || "n"}`);
      }
    }
    if (isInt(arrow.from) && isInt(arrow.to) && arrow.from === arrow.to) {
      problems.push(`arrows[${i}] is a loop (from = to = ${arrow.from})`);
    }
  });
}

function checkMatrix(matrix: unknown, problems: string[]): void {
  if (!isObject(matrix)) {
    problems.push("matrix must be an object");
    return;
  }
  const rows = matrix.rows;
  if (!Array.isArray(rows) || rows.length === 0) {
    problems.push("matrix.rows must be a non-empty array");
    return;
  }
  const n = rows.length;
  rows.forEach((row, i) => {
    if (!Array.isArray(row) || row.length !== n) {
      problems.push(`matrix.rows[${i}] must have ${n} entries`);
    } else {
      row.forEach((v, j) => {
        if (!isInt(v)) problems.push(`matrix.rows[${i}][${j}] must be an integer`);
      });
    }
  });
  const sym = matrix.symmetrizer;
  if (!Array.isArray(sym) || sym.length !== n) {
    problems.push(`matrix.symmetrizer must have ${n} entries`);
  } else {
    sym.forEach((v, i) => {
      if (!isInt(v) || v < 1) {
        problems.push(`matrix.symmetrizer[${i}] must be a positive integer`);
      }
    });
  }
}

function checkPotential(potential: unknown, problems: string[]): void {
  if (!isObject(potential)) {
    problems.push("potential must be an object");
    return;
  }
  if (!Array.isArray(potential.terms)) {
    problems.push("potential.terms must be an array");
    return;
  }
  potential.terms.forEach((term, i) => {
    if (!isObject(term)) {
      problems.push(`potential.terms[${i}] must be an object`);
      return;
    }
    if (!Array.isArray(term.arrows) || term.arrows.length === 0 ||
        term.arrows.some((a: unknown) => typeof a !== "string")) {
      problems.push(`potential.terms[${i}].arrows must be a non-empty string array`);
    }
    if (!Array.isArray(term.omegas) ||
        term.omegas.some((m: unknown) => !isInt(m) || (m as number) < 0)) {
      problems.push(`potential.terms[${i}].omegas must be non-negative integers`);
    } else if (Array.isArray(term.arrows) &&
               term.omegas.length !== term.arrows.length + 1) {
      problems.push(
        `potential.terms[${i}].omegas needs ${(term.arrows as unknown[]).length + 1} slots`);
    }
    const coeff = term.coeff;
    const coeffOk = isInt(coeff) ||
      (Array.isArray(coeff) && coeff.length > 0 && coeff.every(isInt));
    if (!coeffOk) {
      problems.push(`potential.terms[${i}].coeff must be an integer or integer list`);
    }
  });
}

/** Validate a session-creation document: `{sp}`, `{quiver, prime}` or
 * `{matrix, prime}`, optionally with `potential` / `truncation`. */
export function validateDocument(document: unknown): ValidationResult {
  const problems: string[] = [];
  if (!isObject(document)) {
    return { ok: false, problems: ["document must be a JSON object"] };
  }
  const hasSp = "sp" in document;
  const hasQuiver = "quiver" in document;
  const hasMatrix = "matrix" in document;
  if (!hasSp && !hasQuiver && !hasMatrix) {
    problems.push('document needs one of "sp", "quiver" or "matrix"');
  }
  if (hasSp) {
    const sp = document.sp;
    if (!isObject(sp)) {
      problems.push("sp must be an object");
    } else {
      if (!isInt(sp.prime) || sp.prime < 2) problems.push("sp.prime must be an integer >= 2");
      if (!("quiver" in sp)) problems.push("sp.quiver is missing");
      else checkQuiver(sp.quiver, problems);
      if (!("potential" in sp)) problems.push("sp.potential is missing");
      else checkPotential(sp.potential, problems);
    }
  } else {
    if (hasQuiver) checkQuiver(document.quiver, problems);
    if (hasMatrix) checkMatrix(document.matrix, problems);
    if (!isInt(document.prime) || document.prime < 2) {
      problems.push("prime must be an integer >= 2");
    }
    if ("potential" in document) checkPotential(document.potential, problems);
    if ("truncation" in document && (!isInt(document.truncation) || document.truncation < 2)) {
      problems.push("truncation must be an integer >= 2");
    }
  }
  return { ok: problems.length === 0, problems };
}

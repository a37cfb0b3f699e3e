/** HTML/SVG string rendering of a ViewState.  Pure functions: the controller
 * injects the strings and handles events by delegation on data-* attributes. */

import { arcGeometry } from "./layout.js";
import { describeSearch, describeStep, type ViewArc, type ViewState, type ViewVertex } from "./state.js";

const SCALE = 150;
const CENTER = 190;
const VERTEX_RADIUS = 26;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function px(unit: number): number {
  return Math.round((CENTER + unit * SCALE) * 100) / 100;
}

function vertexSvg(v: ViewVertex): string {
  const x = px(v.x);
  const y = px(v.y);
  return (
    `<g class="vertex" data-vertex="${v.index}">` +
    `<circle cx="${x}" cy="${y}" r="${VERTEX_RADIUS}" data-vertex="${v.index}"/>` +
    `<text class="vertex-name" x="${x}" y="${y - 3}" data-vertex="${v.index}">${v.index}</text>` +
    `<text class="vertex-weight" x="${x}" y="${y + 12}" data-vertex="${v.index}">d=${v.weight}</text>` +
    `</g>`
  );
}

function arcSvg(arc: ViewArc, view: ViewState, highlighted: boolean): string {
  const a = view.vertices[arc.from - 1];
  const b = view.vertices[arc.to - 1];
  if (!a || !b) return "";
  const opposite = view.arcs.some((other) => other.from === arc.to && other.to === arc.from);
  const bend = opposite ? 0.18 : 0.06;
  const geo = arcGeometry(
    { x: px(a.x), y: px(a.y) },
    { x: px(b.x), y: px(b.y) },
    bend * SCALE,
    VERTEX_RADIUS + 4,
  );
  const title = arc.ids.map(escapeHtml).join(", ");
  const cls = highlighted ? "arc arc-2cycle" : "arc";
  const label = arc.count > 1 ? `×${arc.count}` : "";
  return (
    `<g class="${cls}">` +
    `<path d="M ${geo.x1} ${geo.y1} Q ${geo.cx} ${geo.cy} ${geo.x2} ${geo.y2}" marker-end="url(#arrowhead)"><title>${title}</title></path>` +
    (label ? `<text class="arc-count" x="${geo.labelX}" y="${geo.labelY}">${label}</text>` : "") +
    `</g>`
  );
}

export function renderQuiverSvg(view: ViewState): string {
  const residual = new Set<string>();
  if (view.lastStep) {
    for (const [pair] of view.lastStep.residual_2cycles) {
      residual.add(`${pair[0]}|${pair[1]}`);
    }
  }
  const isResidual = (arc: ViewArc): boolean => {
    const lo = Math.min(arc.from, arc.to);
    const hi = Math.max(arc.from, arc.to);
    return residual.has(`${lo}|${hi}`);
  };
  const parts = view.arcs.map((arc) => arcSvg(arc, view, isResidual(arc)));
  const nodes = view.vertices.map(vertexSvg);
  return (
    `<svg viewBox="0 0 380 380" role="img" aria-label="quiver">` +
    `<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">` +
    `<path d="M0,0 L8,4 L0,8 z"/></marker></defs>` +
    parts.join("") +
    nodes.join("") +
    `</svg>`
  );
}

export function renderMatrixTable(view: ViewState): string {
  if (!view.matrix) {
    return `<p class="matrix-missing">no exchange matrix (2-cycles present)</p>`;
  }
  const rows = view.matrix.rows
    .map((row) => `<tr>${row.map((v) => `<td>${v}</td>`).join("")}</tr>`)
    .join("");
  return (
    `<table class="matrix"><tbody>${rows}</tbody></table>` +
    `<p class="symmetrizer">symmetrizer diag(${view.matrix.symmetrizer.join(", ")})</p>`
  );
}

export function renderPotentialPanel(view: ViewState): string {
  const s = view.potential;
  const lengths = s.byLength.length === 0
    ? "zero potential"
    : s.byLength.map((lc) => `${lc.count} term${lc.count === 1 ? "" : "s"} of length ${lc.length}`).join(", ");
  const leading = s.leading.length
    ? `<ul class="leading">${s.leading.map((t) => `<li>${escapeHtml(t)}</li>`).join("")}</ul>`
    : "";
  const warning = s.truncated
    ? `<p class="warning">truncation at length ${s.truncation} dropped terms</p>`
    : "";
  return (
    `<p>${lengths} (truncation ${s.truncation})</p>` +
    warning +
    leading +
    `<details><summary>full JSON</summary><pre class="potential-json">${escapeHtml(view.potentialJson)}</pre></details>`
  );
}

export function renderStatus(view: ViewState): string {
  const badge = view.badge
    ? `<span class="badge badge-found">${escapeHtml(describeSearch(view.badge))}</span>`
    : "";
  const acyclic = view.twoAcyclic
    ? `<span class="badge badge-ok">2-acyclic</span>`
    : `<span class="badge badge-bad">has 2-cycles</span>`;
  const step = view.lastStep
    ? `<p class="last-step">${escapeHtml(describeStep(view.lastStep))}</p>`
    : "";
  return (
    `<p>GF(${view.prime}${view.baseDegree > 1 ? `^${view.baseDegree}` : ""}), ` +
    `truncation ${view.truncation} ${acyclic} ${badge}</p>` + step
  );
}

export function renderLog(view: ViewState): string {
  if (view.log.length === 0) return `<p class="log-empty">no mutations yet</p>`;
  return `<ol class="log">${view.log.map((line) => `<li>${escapeHtml(line)}</li>`).join("")}</ol>`;
}

export function renderApp(view: ViewState, busy: boolean): string {
  const disabled = busy ? " disabled" : "";
  return (
    `<section class="panel quiver-panel">` +
    `<h2>quiver <small>click a vertex to mutate</small></h2>` +
    renderQuiverSvg(view) +
    `<div class="controls">` +
    `<button data-action="undo"${view.canUndo && !busy ? "" : " disabled"}>undo</button>` +
    `<form data-action="search" class="search-form">` +
    `<input name="sequence" placeholder="sequence e.g. 3,1" required pattern="[0-9, ]+"${disabled}>` +
    `<input name="seed" placeholder="seed" value="42"${disabled}>` +
    `<input name="budget" type="number" value="100" min="0" max="10000"${disabled}>` +
    `<button type="submit"${disabled}>search witness</button>` +
    `</form></div>` +
    renderStatus(view) +
    `</section>` +
    `<section class="panel"><h2>exchange matrix</h2>${renderMatrixTable(view)}</section>` +
    `<section class="panel"><h2>potential</h2>${renderPotentialPanel(view)}</section>` +
    `<section class="panel"><h2>sequence log</h2>${renderLog(view)}</section>`
  );
}

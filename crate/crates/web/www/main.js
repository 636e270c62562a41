import init, { plane_curve, intersect_curves, decode_pruefer } from "./pkg/tropical_web.js";

const canvas = document.getElementById("plane");
const ctx = canvas.getContext("2d");
const SCALE = 60;
const colors = ["#1f5fbf", "#c0392b"];

function toScreen([x, y]) {
  return [canvas.width / 2 + x * SCALE, canvas.height / 2 - y * SCALE];
}

function axes() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#ddd";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, canvas.height / 2);
  ctx.lineTo(canvas.width, canvas.height / 2);
  ctx.moveTo(canvas.width / 2, 0);
  ctx.lineTo(canvas.width / 2, canvas.height);
  ctx.stroke();
}

function drawCell(cell, color) {
  const far = 100;
  const v = cell.vertices.map((p) => p.xy);
  let a, b;
  if (cell.lineality) {
    const [dx, dy] = cell.directions[0];
    const o = v[0] ?? [0, 0];
    a = [o[0] - far * dx, o[1] - far * dy];
    b = [o[0] + far * dx, o[1] + far * dy];
  } else if (v.length === 2) {
    [a, b] = v;
  } else {
    const [dx, dy] = cell.directions[0];
    a = v[0];
    b = [a[0] + far * dx, a[1] + far * dy];
  }
  ctx.strokeStyle = color;
  ctx.lineWidth = 1 + cell.weight;
  ctx.beginPath();
  ctx.moveTo(...toScreen(a));
  ctx.lineTo(...toScreen(b));
  ctx.stroke();
  if (cell.weight > 1) {
    const m = toScreen(v.length === 2 ? [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2] : [a[0] + 0.5 * (b[0] - a[0]) / far, a[1] + 0.5 * (b[1] - a[1]) / far]);
    ctx.fillStyle = color;
    ctx.fillText(String(cell.weight), m[0] + 4, m[1] - 4);
  }
}

function show(id, result, format) {
  const out = document.getElementById(id);
  out.classList.toggle("error", Boolean(result.error));
  out.textContent = result.error ? result.error : format(result);
}

function drawBoth() {
  axes();
  const lines = [];
  ["poly-f", "poly-g"].forEach((id, i) => {
    const r = JSON.parse(plane_curve(document.getElementById(id).value));
    if (r.error) {
      lines.push(`${id}: ${r.error}`);
      return;
    }
    r.cells.forEach((c) => drawCell(c, colors[i]));
    lines.push(`${id}: ${r.cells.length} cells, balanced: ${r.balanced}`);
  });
  show("plane-out", {}, () => lines.join("\n"));
}

function intersect() {
  drawBoth();
  const f = document.getElementById("poly-f").value;
  const g = document.getElementById("poly-g").value;
  const r = JSON.parse(intersect_curves(f, g));
  show("plane-out", r, (r) => {
    ctx.fillStyle = "#000";
    r.points.forEach((p) => {
      const [x, y] = toScreen(p.point.xy);
      ctx.beginPath();
      ctx.arc(x, y, 4, 0, 2 * Math.PI);
      ctx.fill();
    });
    const pts = r.points.map((p) => `(${p.point.exact.join(", ")}) with multiplicity ${p.weight}`);
    return [...pts, `total ${r.total}`].join("\n");
  });
}

function decode() {
  const n = Number(document.getElementById("pruefer-n").value);
  const r = JSON.parse(decode_pruefer(n, document.getElementById("pruefer-seq").value));
  show("pruefer-out", r, (r) => {
    const splits = r.splits.map(([a, b]) => `{${a.join(",")}} | {${b.join(",")}}`);
    return [`curve ${r.curve || "(vertex)"}`, ...splits, `metric ${r.metric.join(" ")}`].join("\n");
  });
}

await init();
document.getElementById("draw").addEventListener("click", drawBoth);
document.getElementById("intersect").addEventListener("click", intersect);
document.getElementById("decode").addEventListener("click", decode);
drawBoth();

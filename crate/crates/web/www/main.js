import init, { series, subsequence, profile, maximum } from "./pkg/sudler_web.js";

const COLORS = ["#1f5fa8", "#c0392b", "#27864a", "#8e44ad"];

// Draws polylines or point sets on a canvas; each entry is {xs, ys, color, dots}.
function plot(canvas, layers, { xLabel = "", yLabel = "", marks = [] } = {}) {
  const dpr = window.devicePixelRatio || 1;
  const w = canvas.clientWidth, h = canvas.clientHeight;
  canvas.width = w * dpr;
  canvas.height = h * dpr;
  const ctx = canvas.getContext("2d");
  ctx.scale(dpr, dpr);
  ctx.clearRect(0, 0, w, h);

  const finite = (v) => Number.isFinite(v);
  const all = (k) => layers.flatMap((l) => Array.from(l[k]).filter(finite));
  const xs = all("xs"), ys = all("ys");
  if (!xs.length) return;
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const pad = { l: 56, r: 12, t: 10, b: 30 };
  const sx = (x) => pad.l + ((x - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const sy = (y) => h - pad.b - ((y - y0) / (y1 - y0)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, h - pad.b);
  ctx.lineTo(w - pad.r, h - pad.b);
  ctx.stroke();
  for (let i = 0; i <= 4; i++) {
    const y = y0 + ((y1 - y0) * i) / 4, x = x0 + ((x1 - x0) * i) / 4;
    ctx.fillText(y.toPrecision(4), 4, sy(y) + 4);
    ctx.fillText(x.toPrecision(4), sx(x) - 12, h - 12);
  }
  ctx.fillText(xLabel, w - pad.r - 60, h - 2);
  ctx.fillText(yLabel, pad.l + 4, pad.t + 10);

  for (const m of marks) {
    ctx.strokeStyle = "#e3e3e3";
    ctx.beginPath();
    ctx.moveTo(sx(m), pad.t);
    ctx.lineTo(sx(m), h - pad.b);
    ctx.stroke();
  }
  for (const layer of layers) {
    ctx.strokeStyle = ctx.fillStyle = layer.color;
    if (layer.dots) {
      for (let i = 0; i < layer.xs.length; i++) {
        if (!finite(layer.ys[i])) continue;
        ctx.beginPath();
        ctx.arc(sx(layer.xs[i]), sy(layer.ys[i]), 2.5, 0, 2 * Math.PI);
        ctx.fill();
      }
      continue;
    }
    ctx.beginPath();
    let pen = false;
    for (let i = 0; i < layer.xs.length; i++) {
      if (!finite(layer.ys[i])) { pen = false; continue; }
      const [px, py] = [sx(layer.xs[i]), sy(layer.ys[i])];
      pen ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
      pen = true;
    }
    ctx.stroke();
  }
}

function bind(formId, noteId, run) {
  const form = document.getElementById(formId);
  const note = document.getElementById(noteId);
  const go = (event) => {
    event?.preventDefault();
    note.classList.remove("error");
    try {
      const t = performance.now();
      const msg = run(Object.fromEntries(new FormData(form)));
      note.textContent = `${msg} (${(performance.now() - t).toFixed(0)} ms)`;
    } catch (e) {
      note.classList.add("error");
      note.textContent = e.message ?? String(e);
    }
  };
  form.addEventListener("submit", go);
  go();
}

function fibonacciUpTo(n) {
  const out = [];
  for (let a = 1, b = 2; b <= n; [a, b] = [b, a + b]) out.push(b);
  return out;
}

await init();

bind("series-form", "series-note", ({ alpha, nmax, scale }) => {
  const logs = series(alpha, Number(nmax));
  const ys = scale === "log" ? logs : logs.map(Math.exp);
  const xs = logs.map((_, i) => i + 1);
  plot(document.getElementById("series-plot"), [{ xs, ys, color: COLORS[0] }], {
    xLabel: "n",
    yLabel: scale === "log" ? "log P_n" : "P_n",
    marks: fibonacciUpTo(Number(nmax)),
  });
  let best = 0;
  logs.forEach((v, i) => { if (v > logs[best]) best = i; });
  return `max at n = ${best + 1}, P = ${Math.exp(logs[best]).toPrecision(6)}; grey lines at Fibonacci numbers`;
});

bind("subseq-form", "subseq-note", ({ alpha, mmax }) => {
  const rows = subsequence(alpha, Number(mmax));
  const layers = [];
  const last = [];
  for (let i = 0; i < rows.length; i += 4) {
    const [k, index, , p] = rows.subarray(i, i + 4);
    layers[k] ??= { xs: [], ys: [], color: COLORS[k % COLORS.length], dots: true };
    layers[k].xs.push(index);
    layers[k].ys.push(p);
    last[k] = p;
  }
  plot(document.getElementById("subseq-plot"), layers.filter(Boolean), { xLabel: "n", yLabel: "P_{q_n}" });
  return last.map((p, k) => `residue ${k}: ${p.toPrecision(8)}`).join(", ");
});

bind("sup-form", "sup-note", ({ n, samples }) => {
  const count = Number(samples);
  const ys = profile(Number(n), count);
  const xs = Array.from(ys, (_, i) => (i + 1) / (count + 1));
  const [alpha, logNorm, root] = maximum(Number(n));
  plot(document.getElementById("sup-plot"), [
    { xs, ys, color: COLORS[0] },
    { xs: [alpha], ys: [logNorm], color: COLORS[1], dots: true },
  ], { xLabel: "alpha", yLabel: "log P_n(alpha)" });
  return `alpha* = ${alpha.toPrecision(8)}, log max = ${logNorm.toPrecision(8)}, max^(1/n) = ${root.toPrecision(6)}`;
});

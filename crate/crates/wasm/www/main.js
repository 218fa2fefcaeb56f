import init, { covarianceCurve, extremeProbability, characterInfo, characterCurve } from "./pkg/pzeta_wasm.js";

const ZEROS = [14.134725, 21.02204, 25.010858, 30.424876, 32.935062, 37.586178, 40.918719,
  43.327073, 48.005151, 49.773832, 52.970321, 56.446248, 59.347044];

function plot(canvas, xs, series, marks = []) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  let lo = Infinity, hi = -Infinity;
  for (const s of series) {
    for (const v of s.ys) {
      if (Number.isFinite(v)) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
    }
  }
  if (hi === lo) { hi += 1; lo -= 1; }
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = x => pad + (x - x0) / (x1 - x0) * (w - 2 * pad);
  const py = y => h - pad - (y - lo) / (hi - lo) * (h - 2 * pad);

  ctx.strokeStyle = "#999"; ctx.fillStyle = "#444"; ctx.font = "11px sans-serif";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  for (let i = 0; i <= 4; i++) {
    const y = lo + (hi - lo) * i / 4;
    ctx.fillText(y.toPrecision(3), 2, py(y) + 4);
    const x = x0 + (x1 - x0) * i / 4;
    ctx.fillText(x.toFixed(1), px(x) - 10, h - pad + 14);
  }
  ctx.setLineDash([3, 3]);
  for (const m of marks) {
    if (m < x0 || m > x1) continue;
    ctx.beginPath(); ctx.moveTo(px(m), pad); ctx.lineTo(px(m), h - pad); ctx.stroke();
  }
  ctx.setLineDash([]);
  for (const s of series) {
    ctx.strokeStyle = s.color; ctx.lineWidth = 1.5;
    ctx.beginPath();
    let pen = false;
    s.ys.forEach((y, i) => {
      if (!Number.isFinite(y)) { pen = false; return; }
      if (pen) ctx.lineTo(px(xs[i]), py(y)); else ctx.moveTo(px(xs[i]), py(y));
      pen = true;
    });
    ctx.stroke();
  }
}

function wire(id, run) {
  const section = document.getElementById(id);
  const form = section.querySelector("form");
  const status = section.querySelector(".status");
  const go = () => {
    const f = Object.fromEntries(new FormData(form));
    status.className = "status";
    status.textContent = "computing…";
    setTimeout(() => {
      const t0 = performance.now();
      try {
        run(section, f, form);
        status.textContent = `${((performance.now() - t0) / 1000).toFixed(2)} s`;
      } catch (e) {
        status.className = "status error";
        status.textContent = String(e.message ?? e);
      }
    }, 10);
  };
  form.addEventListener("submit", e => { e.preventDefault(); go(); });
  go();
}

await init();

wire("cov", (section, f) => {
  const c = covarianceCurve(+f.limit, +f.dmin, +f.dmax, +f.step);
  plot(section.querySelector("canvas"), c.deltas,
    [{ ys: c.reference, color: "#2c3e50" }, { ys: c.primary, color: "#c0392b" }], ZEROS);
});

wire("prob", (section, f, form) => {
  const c = extremeProbability(+f.tau, +f.sigmas, form.caption.checked, 0.05, +f.dmax, 0.05);
  plot(section.querySelector("canvas"), c.deltas, [{ ys: c.primary, color: "#16a085" }], ZEROS);
});

wire("chi", (section, f) => {
  const info = characterInfo(f.spec);
  const re = info.valuesRe, im = info.valuesIm;
  const vals = Array.from(re, (r, n) => {
    const i = im[n];
    if (r === 0 && i === 0) return `χ(${n}) = 0`;
    return `χ(${n}) = ${r.toFixed(4)}${i < 0 ? " − " : " + "}${Math.abs(i).toFixed(4)}i`;
  });
  section.querySelector("pre").textContent =
    `modulus ${info.modulus}, order ${info.order}, ${info.real ? "real" : "complex"}\n` +
    `mean squared truncation error ${info.mse.toFixed(6)}\n` +
    `error bound ${info.errorBound.toFixed(6)}\n` + vals.join("\n");
  const c = characterCurve(f.spec, +f.limit, 0.0, +f.dmax, 0.05);
  plot(section.querySelector("canvas"), c.deltas,
    [{ ys: c.reference, color: "#2c3e50" }, { ys: c.primary, color: "#8e44ad" }], ZEROS);
});

import init, { rate_curve, mean_field, saddle_point, sample_components } from "./pkg/giant_ld_wasm.js";

const $ = (id) => document.getElementById(id);
const fmt = (x) => Number(x).toPrecision(6);

function fail(el, e) {
  el.innerHTML = `<span class="err">${e.message ?? e}</span>`;
}

function drawCurve() {
  const a = Number($("curve-alpha").value);
  $("curve-alpha-value").textContent = a.toFixed(2);
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  let ys, mf;
  try {
    ys = rate_curve(a, 400);
    mf = mean_field(a);
  } catch (e) {
    return fail($("curve-info"), e);
  }
  const finite = Array.from(ys).filter(Number.isFinite);
  const top = Math.max(...finite, 1e-9);
  const px = (x) => pad + x * (w - 2 * pad);
  const py = (y) => h - pad - (Math.min(y, top) / top) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.fillText("0", pad - 12, h - pad + 4);
  ctx.fillText(fmt(top), 2, pad + 4);
  ctx.fillText("ρ", w - pad + 8, h - pad + 4);
  ctx.fillText("1", w - pad - 3, h - pad + 14);

  ctx.strokeStyle = "#c33";
  ctx.lineWidth = 2;
  ctx.beginPath();
  let started = false;
  ys.forEach((y, i) => {
    if (!Number.isFinite(y)) return;
    const x = px(i / (ys.length - 1));
    started ? ctx.lineTo(x, py(y)) : ctx.moveTo(x, py(y));
    started = true;
  });
  ctx.stroke();
  ctx.lineWidth = 1;

  ctx.strokeStyle = "#4a7bd0";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(px(mf[0]), pad);
  ctx.lineTo(px(mf[0]), h - pad);
  ctx.stroke();
  ctx.setLineDash([]);

  $("curve-info").textContent =
    `minimizer ρ* = ${fmt(mf[0])}; forest rate ${fmt(mf[4])}; ` +
    `saddle limits s = ${fmt(mf[1])}, ρ = ${fmt(mf[2])}, Θ = ${fmt(mf[3])}`;
}

function solveSaddle() {
  const out = $("saddle-out");
  try {
    const [s, rho, theta, proxy] = saddle_point(Number($("saddle-alpha").value), Number($("saddle-r").value));
    const rows = [["s_r", s], ["ρ_r", rho], ["Θ_r", theta], ["proxy rate", proxy]];
    out.innerHTML = rows.map(([k, v]) => `<tr><th>${k}</th><td>${fmt(v)}</td></tr>`).join("");
  } catch (e) {
    fail(out, e);
  }
}

function sample() {
  const n = Number($("sample-n").value);
  const info = $("sample-info");
  const box = $("components");
  box.innerHTML = "";
  let sizes;
  try {
    sizes = sample_components(n, Number($("sample-alpha").value), BigInt($("sample-seed").value));
  } catch (e) {
    return fail(info, e);
  }
  const isolated = sizes.filter((s) => s === 1).length;
  info.textContent =
    `${sizes.length} components; largest ${sizes[0]} (${fmt(sizes[0] / n)} of n); ` +
    `second ${sizes[1] ?? 0}; ${isolated} isolated vertices`;
  for (const s of sizes.slice(0, 60)) {
    const bar = document.createElement("span");
    bar.style.width = "10px";
    bar.style.height = `${Math.max(1, (120 * s) / sizes[0])}px`;
    bar.title = s;
    box.appendChild(bar);
  }
}

await init();
$("curve-alpha").addEventListener("input", drawCurve);
$("saddle-run").addEventListener("click", solveSaddle);
$("sample-run").addEventListener("click", sample);
drawCurve();
solveSaddle();
sample();

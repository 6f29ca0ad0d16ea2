import init, { solve_exact, solve_approx, solve_monster, monster_text } from "./pkg/tmtb_wasm.js";

const $ = (id) => document.getElementById(id);

function show(label, run) {
  const status = $("status");
  const t0 = performance.now();
  try {
    const s = run();
    const ms = performance.now() - t0;
    $("figure").innerHTML = s.svg;
    status.className = "";
    status.textContent =
      `${label}\ncenter  (${s.center_x.toPrecision(8)}, ${s.center_y.toPrecision(8)})\n` +
      `radius  ${s.radius.toPrecision(10)}\ntrajectories ${s.trajectories}` +
      (s.ghosts ? `, ghosts ${s.ghosts}` : "") + `\n${ms.toFixed(1)} ms`;
    s.free();
  } catch (e) {
    status.className = "error";
    status.textContent = String(e.message ?? e);
  }
}

function fillRemove() {
  const n = Number($("n").value);
  const sel = $("remove");
  const keep = sel.value;
  sel.innerHTML = '<option value="-1">nothing</option>';
  for (let i = 0; i < n; i++) sel.add(new Option(`T${i}`, String(i)));
  if (Number(keep) < n) sel.value = keep;
}

await init();

$("exact").onclick = () => show("exact", () => solve_exact($("input").value, $("raise").checked));
$("approx").onclick = () => {
  const eps = Number($("eps").value);
  show(`approx, eps = ${eps}`, () => solve_approx($("input").value, eps, 1e-6, $("ghosts").checked));
};
$("eps").oninput = () => { $("eps-out").value = $("eps").value; $("approx").onclick(); };
$("n").onchange = fillRemove;
$("remove").onchange = () => $("monster").onclick();
$("monster").onclick = () => {
  const n = Number($("n").value);
  const r = Number($("remove").value);
  show(r < 0 ? `n = ${n}, all trajectories` : `n = ${n}, without T${r}`,
       () => solve_monster(n, r, $("raise").checked));
};
$("load").onclick = () => {
  try { $("input").value = monster_text(Number($("n").value)); } catch (e) { $("status").textContent = e.message; }
};

fillRemove();
$("exact").onclick();

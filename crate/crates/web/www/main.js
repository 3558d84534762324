import init, { generate, solve, tile } from "./pkg/lcycle_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
let current = null;

function fail(el, e) {
  el.className = "err";
  el.textContent = e.message ?? String(e);
}

function drawRing(order, aSet) {
  const svg = $("ring");
  svg.innerHTML = "";
  const ns = "http://www.w3.org/2000/svg";
  const r = 130;
  const at = (i) => {
    const t = (2 * Math.PI * i) / order.length - Math.PI / 2;
    return [r * Math.cos(t), r * Math.sin(t)];
  };
  const poly = document.createElementNS(ns, "polygon");
  poly.setAttribute("points", order.map((_, i) => at(i).join(",")).join(" "));
  poly.setAttribute("fill", "none");
  poly.setAttribute("stroke", "#999");
  svg.appendChild(poly);
  order.forEach((v, i) => {
    const [x, y] = at(i);
    const c = document.createElementNS(ns, "circle");
    c.setAttribute("cx", x);
    c.setAttribute("cy", y);
    c.setAttribute("r", 11);
    c.setAttribute("class", aSet.has(v) ? "a" : "b");
    svg.appendChild(c);
    const t = document.createElementNS(ns, "text");
    t.setAttribute("x", x);
    t.setAttribute("y", y + 4);
    t.setAttribute("text-anchor", "middle");
    t.setAttribute("fill", "white");
    t.setAttribute("font-size", "11");
    t.textContent = v;
    svg.appendChild(t);
  });
}

function showStages(stages) {
  const rows = stages.map((s) => {
    const why = s.diagnostics.join("; ");
    return `<tr><td>${s.stage}</td><td>${s.status}</td><td>${s.wall_ms.toFixed(2)}</td><td>${why}</td></tr>`;
  });
  $("stages").innerHTML = "<tr><th>stage</th><th>status</th><th>ms</th><th>notes</th></tr>" + rows.join("");
}

$("gen").onclick = () => {
  const out = $("gen-out");
  out.className = "";
  try {
    current = JSON.parse(
      generate($("family").value, num("k"), num("l"), num("n"), num("seed"), num("add"), num("remove")),
    );
    out.textContent =
      `${current.edges} edges, A = {${current.a}}, min codegree ${current.min_codegree} ` +
      `(floor ${current.floor})`;
  } catch (e) {
    current = null;
    fail(out, e);
  }
};

$("solve").onclick = () => {
  const out = $("solve-out");
  out.className = "";
  $("ring").innerHTML = "";
  $("stages").innerHTML = "";
  if (!current) return fail(out, "generate an instance first");
  try {
    const t0 = performance.now();
    const r = JSON.parse(solve(JSON.stringify(current.instance), num("l"), $("fallback").checked, num("nodes")));
    const ms = (performance.now() - t0).toFixed(1);
    if (r.found === true) {
      out.textContent = `cycle found by ${r.method} in ${ms} ms`;
      drawRing(r.cycle, new Set(current.a));
    } else if (r.found === "exhausted") {
      out.textContent = `budget exhausted after ${ms} ms`;
    } else if (r.failure) {
      out.textContent = `pipeline failed at ${r.failure.stage}: ${r.failure.reason}`;
    } else {
      out.textContent = `no Hamilton l-cycle exists (${ms} ms)`;
    }
    showStages(r.trace.stages);
  } catch (e) {
    fail(out, e);
  }
};

$("tile").onclick = () => {
  const out = $("tile-out");
  out.className = "";
  if (!current) return fail(out, "generate an instance first");
  try {
    const r = JSON.parse(tile(JSON.stringify(current.instance), num("b"), num("beta"), num("gamma")));
    const covered = r.tiling.copies.length;
    const head = `${r.variant}: ${covered} copies, ${r.tiling.uncovered_count} vertices uncovered`;
    out.textContent = head + "\n" + JSON.stringify(r.certificate ?? {}, null, 1);
  } catch (e) {
    fail(out, e);
  }
};

init().then(() => $("gen").click());

import init, { analyze_space, symbolic_query_json, counterexample_json } from "./pkg/soberlab_web.js";

const PRESETS = {
  sierpinski: { name: "sierpinski", points: ["0", "1"], opens: [[], ["1"], ["0", "1"]] },
  indiscrete: { name: "indiscrete2", points: ["a", "b"], opens: [[], ["a", "b"]] },
  vee: { name: "vee", points: ["l", "r", "t"], opens: [[], ["t"], ["l", "t"], ["r", "t"], ["l", "r", "t"]] },
  chain: { name: "chain3", points: ["a", "b", "c"], opens: [[], ["c"], ["b", "c"], ["a", "b", "c"]] },
};

const $ = (id) => document.getElementById(id);

function esc(s) {
  return String(s).replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" })[c]);
}

const setText = (labels) => (labels.length ? "{" + labels.join(",") + "}" : "∅");
const yesno = (b) => `<span class="${b ? "ok" : "bad"}">${b}</span>`;

function hasse(opens, edges, marked) {
  const ranks = new Map();
  opens.forEach((o, i) => {
    const r = o.length;
    if (!ranks.has(r)) ranks.set(r, []);
    ranks.get(r).push(i);
  });
  const levels = [...ranks.keys()].sort((a, b) => a - b);
  const widest = Math.max(...levels.map((l) => ranks.get(l).length));
  const W = Math.max(260, widest * 90), H = Math.max(120, levels.length * 60);
  const pos = [];
  levels.forEach((l, li) => {
    const row = ranks.get(l);
    row.forEach((i, k) => {
      pos[i] = [((k + 1) * W) / (row.length + 1), H - 25 - (li * (H - 50)) / Math.max(1, levels.length - 1)];
    });
  });
  let svg = `<svg width="${W}" height="${H}" role="img" aria-label="open set lattice">`;
  for (const [a, b] of edges) {
    const [x1, y1] = pos[a], [x2, y2] = pos[b];
    svg += `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" stroke="#999"/>`;
  }
  opens.forEach((o, i) => {
    const [x, y] = pos[i];
    const fill = marked(o) ? "#cfe8d5" : "#fff";
    const label = esc(setText(o));
    const w = 10 + label.length * 7.2;
    svg += `<rect x="${x - w / 2}" y="${y - 11}" width="${w}" height="22" rx="4" fill="${fill}" stroke="#555"/>`;
    svg += `<text x="${x}" y="${y + 4}" text-anchor="middle">${label}</text>`;
  });
  return svg + "</svg>";
}

function analyze() {
  const out = $("space-out");
  const v = JSON.parse(analyze_space($("space").value));
  if (v.error) {
    out.innerHTML = `<p class="err">${esc(v.error)}</p>`;
    return;
  }
  const p = v.properties, s = v.sobrification, r = v.rclass;
  const key = (labels) => [...labels].sort().join(",");
  const inR = new Set(r.r.map(key));
  const clauses = s.verification.clauses
    .map((c) => `<tr><td>${c.clause}</td><td>${esc(c.name)}</td><td>${yesno(c.pass)}</td>` +
      `<td>${c.sides ? c.sides.join(" / ") : ""}</td></tr>`)
    .join("");
  out.innerHTML = `
    <div class="row">
      <div>
        <table>
          <tr><th>T0</th><td>${yesno(p.t0)}</td></tr>
          <tr><th>quasisober</th><td>${yesno(p.quasisober)}</td></tr>
          <tr><th>sober</th><td>${yesno(p.sober)}</td></tr>
          <tr><th>|S|</th><td>${s.points.length}</td></tr>
          <tr><th>R(X) = Q(X)</th><td>${yesno(r.equal)}</td></tr>
          <tr><th>⋃R(X) = X</th><td>${yesno(r.covers)}</td></tr>
          <tr><th>filters ↔ Q(X)</th><td>${yesno(v.hm.bijection)}</td></tr>
        </table>
        <p class="muted">Irreducible closed sets: ${p.irreducible_closed
          .map((e) => esc(setText(e.set)) + (e.generic ? " = cl{" + esc(e.generic) + "}" : " (no generic point)"))
          .join("; ")}</p>
      </div>
      <div>
        ${hasse(v.space.opens, s.open_lattice_edges, (o) => inR.has(key(o)))}
        <p class="muted">Open sets ordered by inclusion; shaded ones belong to R(X).</p>
      </div>
    </div>
    <table><tr><th>#</th><th>sobrification check</th><th>pass</th><th>sides</th></tr>${clauses}</table>
    <p>ξ: ${s.xi.map(([x, y]) => esc(x) + " ↦ " + esc(y)).join(", ")}</p>
    ${r.exclusions.length ? `<p>Excluded from R(X): ${r.exclusions
      .map((e) => esc(setText(e.set)) + " (" + esc(e.reason) + ")")
      .join(", ")}</p>` : ""}`;
}

function query() {
  const v = JSON.parse(symbolic_query_json($("family").value, $("predicate").value, $("set").value));
  const out = $("query-out");
  if (v.error) {
    out.innerHTML = `<p class="err">${esc(v.error)}</p>`;
    return;
  }
  const a = v.verdict.answer;
  let answer;
  if (a.kind === "set") answer = esc(a.value);
  else if (a.kind === "bool") answer = yesno(a.value);
  else {
    answer = yesno(a.irreducible);
    if (a.generic !== null && a.generic !== undefined) answer += `, generic point ${a.generic}`;
    if (a.reducing_pair) answer += `, covered by ${esc(a.reducing_pair[0])} and ${esc(a.reducing_pair[1])}`;
  }
  out.innerHTML = `
    <p><b>${esc(v.input)}</b>: ${answer}</p>
    <p class="muted">${esc(v.verdict.certificate)}</p>
    <p>In R(X): ${yesno(v.r_membership.member)}${v.r_membership.reason ? " (" + esc(v.r_membership.reason) + ")" : ""}.
       Space quasisober: ${yesno(v.summary.quasisober)}.</p>`;
}

function counterexample() {
  const v = JSON.parse(counterexample_json($("cx-family").value, BigInt($("jmax").value || 0)));
  const out = $("cx-out");
  if (v.error) {
    out.innerHTML = `<p class="err">${esc(v.error)}</p>`;
    return;
  }
  const rec = v.record;
  const rows = Object.entries(rec)
    .filter(([k]) => k !== "checked_up_to")
    .map(([k, b]) => `<tr><td>${esc(k.replaceAll("_", " "))}</td><td>${yesno(b)}</td></tr>`)
    .join("");
  out.innerHTML = `
    <p>${esc(v.chain.rule)}: ${v.sample.map(esc).join(" ⊇ ")} ⊇ …</p>
    <table>${rows}</table>
    <p class="muted">Checked for j ≤ ${rec.checked_up_to}.</p>`;
}

async function main() {
  await init();
  const load = () => ($("space").value = JSON.stringify(PRESETS[$("preset").value], null, 1).replace(/\n\s*/g, " "));
  $("preset").addEventListener("change", () => { load(); analyze(); });
  $("analyze").addEventListener("click", analyze);
  $("query").addEventListener("click", query);
  $("cx").addEventListener("click", counterexample);
  load();
  analyze();
  query();
  counterexample();
}

main();

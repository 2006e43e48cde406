import init, { analyze, regime_table, section_volume } from "./pkg/ipgap_wasm.js";

const $ = (id) => document.getElementById(id);

function text(tag, s, cls) {
  const el = document.createElement(tag);
  el.textContent = s;
  if (cls) el.className = cls;
  return el;
}

function runAnalyze() {
  const doc = JSON.parse(analyze($("instance").value));
  $("report").textContent = JSON.stringify(doc, null, 2);
  const out = $("summary");
  out.replaceChildren();
  if (doc.error) {
    out.append(text("p", doc.error, "no"));
    return;
  }
  out.append(text("p", `status ${doc.status}, gap ${doc.gap ?? "–"}`));
  const table = document.createElement("table");
  const head = document.createElement("tr");
  for (const h of ["bound", "z*", "value", "verdict"]) head.append(text("th", h));
  table.append(head);
  for (const b of doc.bounds) {
    const row = document.createElement("tr");
    row.append(text("td", b.name), text("td", b.z_star ?? ""), text("td", b.value ?? "–"));
    row.append(text("td", b.verdict, b.verdict === "violated" ? "no" : ""));
    table.append(row);
  }
  out.append(table);
}

function runRegime() {
  const rows = JSON.parse(regime_table(Number($("mmax").value), Number($("span").value)));
  const out = $("regime-out");
  out.replaceChildren();
  if (rows.error) {
    out.append(text("p", rows.error, "no"));
    return;
  }
  const table = document.createElement("table");
  const head = document.createElement("tr");
  for (const h of ["form", "m", "s", "lhs", "rhs", "holds"]) head.append(text("th", h));
  table.append(head);
  for (const r of rows) {
    const row = document.createElement("tr");
    row.append(text("td", r.form), text("td", r.m), text("td", r.s));
    row.append(text("td", r.lhs.toPrecision(6)), text("td", r.rhs.toPrecision(6)));
    row.append(text("td", r.holds ? "yes" : "no", r.holds ? "" : "no"));
    table.append(row);
  }
  out.append(table);
}

function runSection() {
  const doc = section_volume($("sec-a").value, Number($("sec-h").value),
    Number($("sec-n").value) >>> 0, Number($("sec-seed").value) >>> 0);
  $("section-out").textContent = doc;
}

await init();
$("analyze").onclick = runAnalyze;
$("preset").onchange = (e) => {
  if (e.target.value) $("instance").value = e.target.value;
  runAnalyze();
};
$("regime").onclick = runRegime;
$("section").onclick = runSection;
runAnalyze();
runRegime();

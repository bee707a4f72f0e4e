import init, { faces, chi, hypergraph } from "./pkg/gperm_web.js";

const $ = (id) => document.getElementById(id);

function num(s) {
  const [p, q] = s.split("/");
  return Number(p) / (q === undefined ? 1 : Number(q));
}

function table(headers, rows) {
  const head = "<tr>" + headers.map((h) => `<th>${h}</th>`).join("") + "</tr>";
  const body = rows
    .map((r) => `<tr class="${r.pass === false ? "fail" : ""}">` + r.cells.map((c) => `<td>${c}</td>`).join("") + "</tr>")
    .join("");
  return `<table>${head}${body}</table>`;
}

function show(out, f) {
  try {
    out.innerHTML = f();
  } catch (e) {
    out.innerHTML = `<p class="error">${e}</p>`;
  }
}

// Projects points of the plane x+y+z = const onto the page.
function polygon(result) {
  const pts = result.vertices.map((v) => {
    const [x, y, z] = v.map(num);
    return [((x - y) * Math.sqrt(3)) / 2, (x + y - 2 * z) / 2];
  });
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const span = Math.max(Math.max(...xs) - Math.min(...xs), Math.max(...ys) - Math.min(...ys)) || 1;
  const size = 240;
  const sx = (x) => 20 + ((x - Math.min(...xs)) / span) * (size - 40);
  const sy = (y) => size - 20 - ((y - Math.min(...ys)) / span) * (size - 40);
  const edges = result.faces
    .filter((f) => f.dim === 1)
    .map((f) => {
      const [a, b] = f.vertices.map((i) => pts[i]);
      return `<line x1="${sx(a[0])}" y1="${sy(a[1])}" x2="${sx(b[0])}" y2="${sy(b[1])}" stroke="#246" stroke-width="2"/>`;
    });
  const dots = pts.map(
    (p, i) =>
      `<circle cx="${sx(p[0])}" cy="${sy(p[1])}" r="4" fill="#b42"><title>(${result.vertices[i].join(", ")})</title></circle>`,
  );
  return `<svg width="${size}" height="${size}">${edges.join("")}${dots.join("")}</svg>`;
}

function runFaces() {
  show($("faces-out"), () => {
    const r = JSON.parse(faces($("setfn").value));
    const fv = r.f_vector.map((n, k) => `${n} of dimension ${k}`).join(", ");
    const picture = r.d === 3 && r.dim === 2 ? polygon(r) : "";
    const verts = r.vertices.map((v) => `(${v.join(", ")})`).join(" ");
    return `<p>dimension ${r.dim}; faces: ${fv}</p>${picture}<p><code>${verts}</code></p>`;
  });
}

function runChi() {
  show($("chi-out"), () => {
    const r = JSON.parse(chi($("setfn").value, Number($("chi-k").value), BigInt($("chi-m").value)));
    const sign = (r.d - r.k) % 2 === 0 ? "" : "-";
    const rows = r.rows.map((x) => ({
      pass: x.pass,
      cells: [x.m, x.p_m, x.count, x.signed_p_neg_m, x.face_sum],
    }));
    return (
      `<p>&chi;<sub>${r.d},${r.k}</sub>(m) = <code>${r.polynomial.text}</code></p>` +
      table(["m", "p(m)", "directions", `${sign}p(&minus;m)`, `&Sigma; ${r.k}-faces of P<sub>y</sub>`], rows)
    );
  });
}

function runHypergraph() {
  show($("hg-out"), () => {
    const r = JSON.parse(hypergraph($("hg").value, Number($("hg-m").value)));
    const sign = r.nodes.length % 2 === 0 ? "" : "-";
    const rows = r.rows.map((x) => ({
      pass: x.pass,
      cells: [x.m, x.colorings, x.signed_chi_neg_m, x.compatible_pairs],
    }));
    return (
      `<p>&chi;(m) = <code>${r.polynomial.text}</code>; ${r.acyclic_headings} acyclic headings, ` +
      `in-degree vectors <code>${r.vertices.map((v) => `(${v.join(", ")})`).join(" ")}</code></p>` +
      table(["m", "proper colorings", `${sign}&chi;(&minus;m)`, "compatible pairs"], rows)
    );
  });
}

await init();
$("faces-run").onclick = runFaces;
$("chi-run").onclick = runChi;
$("hg-run").onclick = runHypergraph;
runFaces();
runChi();
runHypergraph();

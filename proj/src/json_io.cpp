#include "dlat/json_io.hpp"

#include <utility>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::BadInput, "field '" + field + "': " + what);
}

const Json& at(const Json& j, const std::string& field) {
  if (!j.is_object()) bad(field, "enclosing value is not an object");
  auto it = j.find(field);
  if (it == j.end()) bad(field, "missing");
  return *it;
}

Int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<Int>();
}

IntVec as_vec(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of integers");
  IntVec v;
  for (const auto& e : j) v.push_back(as_int(e, field));
  return v;
}

IntMatrix as_matrix(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of rows");
  IntMatrix m;
  for (const auto& row : j) m.push_back(as_vec(row, field));
  return m;
}

Rational as_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<Int>());
  if (!j.is_string()) bad(field, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(field, e.what());
  }
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(r);
  return rows;
}

Json classes_json(const DTable& t, const IntVec* labels) {
  Json classes = Json::array();
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    Json c{{"rep", e.cls.rep}, {"min_norm", to_string(e.min_norm)}, {"d", to_string(e.d)}};
    if (labels) c["label"] = (*labels)[i];
    classes.push_back(std::move(c));
  }
  return classes;
}

Status status_from(const std::string& s, const std::string& field) {
  for (Status v : {Status::Pass, Status::Fail, Status::Inconclusive, Status::NotApplicable})
    if (to_string(v) == s) return v;
  bad(field, "unknown status '" + s + "'");
}

EmbedStatus embed_status_from(const std::string& s, const std::string& field) {
  for (EmbedStatus v : {EmbedStatus::Embeds, EmbedStatus::DoesNotEmbed, EmbedStatus::Inconclusive})
    if (to_string(v) == s) return v;
  bad(field, "unknown embedding status '" + s + "'");
}

SliceVerdict verdict_from(const std::string& s) {
  for (SliceVerdict v : {SliceVerdict::Obstructed, SliceVerdict::PassesBoth, SliceVerdict::Inconclusive})
    if (to_string(v) == s) return v;
  bad("verdict", "unknown verdict '" + s + "'");
}

std::string as_string(const Json& j, const std::string& field) {
  if (!j.is_string()) bad(field, "expected a string");
  return j.get<std::string>();
}

Json side_json(const EmbeddingSide& s) {
  Json j{{"q", s.q}, {"gram", matrix_json(s.gram)}, {"status", to_string(s.status)}, {"nodes", s.nodes}};
  j["embedding"] = s.witness ? matrix_json(s.witness->matrix) : Json(nullptr);
  return j;
}

EmbeddingSide side_from(const Json& j) {
  EmbeddingSide s;
  s.q = as_int(at(j, "q"), "q");
  s.gram = as_matrix(at(j, "gram"), "gram");
  s.status = embed_status_from(as_string(at(j, "status"), "status"), "status");
  const Json& nodes = at(j, "nodes");
  if (!nodes.is_number_unsigned()) bad("nodes", "expected a non-negative integer");
  s.nodes = nodes.get<std::uint64_t>();
  const Json& w = at(j, "embedding");
  if (!w.is_null()) s.witness = EmbeddingWitness{as_matrix(w, "embedding")};
  return s;
}

Json pairs_json(const std::vector<std::pair<Int, Int>>& v) {
  Json a = Json::array();
  for (auto [p, q] : v) a.push_back({p, q});
  return a;
}

}  // namespace

Json gram_to_json(const IntMatrix& gram) { return Json{{"gram", matrix_json(gram)}}; }

IntMatrix gram_from_json(const Json& j) { return as_matrix(at(j, "gram"), "gram"); }

Json dtable_to_json(const DTable& t) {
  return Json{{"det", t.det}, {"rank", t.rank}, {"classes", classes_json(t, nullptr)}};
}

DTable dtable_from_json(const Json& j) {
  DTable t;
  t.det = as_int(at(j, "det"), "det");
  t.rank = static_cast<int>(as_int(at(j, "rank"), "rank"));
  const Json& classes = at(j, "classes");
  if (!classes.is_array()) bad("classes", "expected an array");
  for (const auto& c : classes) {
    DEntry e;
    e.cls.rep = as_vec(at(c, "rep"), "rep");
    e.min_norm = as_rational(at(c, "min_norm"), "min_norm");
    e.d = as_rational(at(c, "d"), "d");
    t.entries.push_back(std::move(e));
  }
  return t;
}

Json lens_to_json(const LensDTable& t) {
  return Json{{"p", t.p},
              {"q", t.q},
              {"det", t.table.det},
              {"rank", t.table.rank},
              {"classes", classes_json(t.table, &t.labels)}};
}

Json embedding_to_json(const EmbeddingWitness& w) { return Json{{"embedding", matrix_json(w.matrix)}}; }

EmbeddingWitness embedding_from_json(const Json& j) { return EmbeddingWitness{as_matrix(at(j, "embedding"), "embedding")}; }

Json torsor_witness_to_json(const TorsorIsoWitness& w) {
  Json iso = Json::array();
  for (std::size_t i = 0; i < w.group_iso.size(); ++i) iso.push_back({i, w.group_iso[i]});
  return Json{{"sign", w.sign}, {"group_iso", iso}, {"base", {{"from", w.base_from}, {"to", w.base_to}}}};
}

TorsorIsoWitness torsor_witness_from_json(const Json& j) {
  TorsorIsoWitness w;
  w.sign = static_cast<int>(as_int(at(j, "sign"), "sign"));
  if (w.sign != 1 && w.sign != -1) bad("sign", "must be 1 or -1");
  const Json& iso = at(j, "group_iso");
  if (!iso.is_array()) bad("group_iso", "expected an array");
  w.group_iso.resize(iso.size());
  std::vector<bool> seen(iso.size(), false);
  for (const auto& entry : iso) {
    if (!entry.is_array() || entry.size() != 2) bad("group_iso", "entries are [gen_index, image_coeffs]");
    const Int i = as_int(entry[0], "group_iso");
    if (i < 0 || i >= static_cast<Int>(iso.size()) || seen[i]) bad("group_iso", "bad generator index");
    seen[i] = true;
    w.group_iso[i] = as_vec(entry[1], "group_iso");
  }
  const Json& base = at(j, "base");
  w.base_from = as_vec(at(base, "from"), "base.from");
  w.base_to = as_vec(at(base, "to"), "base.to");
  return w;
}

Json graph_to_json(const PlaneMultigraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  Json rotations = Json::array();
  for (const auto& rot : g.rotations) {
    Json r = Json::array();
    for (const auto& e : rot) r.push_back({e.edge, e.end});
    rotations.push_back(std::move(r));
  }
  return Json{{"vertices", g.vertex_count}, {"edges", edges}, {"rotations", rotations}};
}

PlaneMultigraph graph_from_json(const Json& j) {
  PlaneMultigraph g;
  g.vertex_count = static_cast<int>(as_int(at(j, "vertices"), "vertices"));
  if (g.vertex_count < 1) bad("vertices", "must be positive");
  for (const auto& e : as_matrix(at(j, "edges"), "edges")) {
    if (e.size() != 2) bad("edges", "each edge is [u, v]");
    g.edges.emplace_back(static_cast<int>(e[0]), static_cast<int>(e[1]));
  }
  const Json& rotations = at(j, "rotations");
  if (!rotations.is_array()) bad("rotations", "expected one array per vertex");
  for (const auto& rot : rotations) {
    std::vector<EdgeEnd> r;
    for (const auto& e : as_matrix(rot, "rotations")) {
      if (e.size() != 2) bad("rotations", "each entry is [edge, end]");
      r.push_back({static_cast<int>(e[0]), static_cast<int>(e[1])});
    }
    g.rotations.push_back(std::move(r));
  }
  validate(g);
  return g;
}

Json pd_to_json(const PdCode& pd) {
  Json a = Json::array();
  for (const auto& c : pd) a.push_back({c[0], c[1], c[2], c[3]});
  return Json{{"pd", a}};
}

PdCode pd_from_json(const Json& j) {
  PdCode pd;
  for (const auto& c : as_matrix(at(j, "pd"), "pd")) {
    if (c.size() != 4) bad("pd", "each crossing has four labels");
    pd.push_back({c[0], c[1], c[2], c[3]});
  }
  return pd;
}

Json slice_report_to_json(const SliceReport& r) {
  Json evidence = Json::array();
  for (const auto& e : r.cond1.evidence) evidence.push_back({{"label", e.label}, {"d", to_string(e.d)}});
  return Json{{"p", r.p},
              {"q", r.q},
              {"square", r.square ? Json(*r.square) : Json(nullptr)},
              {"cond1", {{"status", to_string(r.cond1.status)}, {"evidence", evidence}}},
              {"cond2",
               {{"status", to_string(r.cond2.status)}, {"sides", {side_json(r.cond2.first), side_json(r.cond2.second)}}}},
              {"verdict", to_string(r.verdict)}};
}

SliceReport slice_report_from_json(const Json& j) {
  SliceReport r;
  r.p = as_int(at(j, "p"), "p");
  r.q = as_int(at(j, "q"), "q");
  const Json& square = at(j, "square");
  if (!square.is_null()) r.square = as_int(square, "square");
  const Json& c1 = at(j, "cond1");
  r.cond1.status = status_from(as_string(at(c1, "status"), "cond1.status"), "cond1.status");
  const Json& evidence = at(c1, "evidence");
  if (!evidence.is_array()) bad("cond1.evidence", "expected an array");
  for (const auto& e : evidence) r.cond1.evidence.push_back({as_int(at(e, "label"), "label"), as_rational(at(e, "d"), "d")});
  const Json& c2 = at(j, "cond2");
  r.cond2.status = status_from(as_string(at(c2, "status"), "cond2.status"), "cond2.status");
  const Json& sides = at(c2, "sides");
  if (!sides.is_array() || sides.size() != 2) bad("cond2.sides", "expected two sides");
  r.cond2.first = side_from(sides[0]);
  r.cond2.second = side_from(sides[1]);
  r.verdict = verdict_from(as_string(at(j, "verdict"), "verdict"));
  return r;
}

Json sweep_to_json(const SweepReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(slice_report_to_json(row));
  return Json{{"max_m", r.max_m},
              {"consistent", r.consistent()},
              {"mismatches", pairs_json(r.mismatches)},
              {"inconclusive", pairs_json(r.inconclusive)},
              {"passing", pairs_json(r.passing)},
              {"rows", rows}};
}

}  // namespace dlat

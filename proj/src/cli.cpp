#include "dlat/cli.hpp"

#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dlat/diso.hpp"
#include "dlat/errors.hpp"
#include "dlat/json_io.hpp"
#include "dlat/lens.hpp"
#include "dlat/obstruct.hpp"
#include "dlat/tait.hpp"

namespace dlat {

namespace {

struct Settings {
  bool json = false;
  bool strict = false;
  bool strict_linking = false;
  std::uint64_t budget_nodes = Limits{}.budget_nodes;
  Int det_cap = Limits{}.det_cap;
  Int group_cap = Limits{}.group_cap;
  unsigned threads = 0;
  std::string color = "black";
  std::string cache;

  Limits limits() const {
    Limits l;
    l.budget_nodes = budget_nodes;
    l.det_cap = det_cap;
    l.group_cap = group_cap;
    l.threads = threads;
    return l;
  }
  FaceColor face_color() const { return color == "white" ? FaceColor::White : FaceColor::Black; }
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, const Settings& s) : in_(in), out_(out), s_(s) {}

  Json read(const std::string& path) {
    try {
      if (path == "-") return Json::parse(in_);
      std::ifstream f(path);
      if (!f) throw Error(ErrorCode::BadInput, "cannot open '" + path + "'");
      return Json::parse(f);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::BadInput, "'" + path + "' is not valid JSON: " + e.what());
    }
  }

  // A Gram matrix, a PD code (lattice of the chosen Tait graph) or a plane graph (flow lattice).
  IntegralLattice lattice_of(const Json& j) {
    if (j.contains("gram")) return lattice_from_gram(gram_from_json(j));
    if (j.contains("pd")) return diagram_lattice(parse_pd(pd_from_json(j)), s_.face_color());
    if (j.contains("vertices")) return flow_lattice(graph_from_json(j)).lattice;
    throw Error(ErrorCode::BadInput, "expected a 'gram', 'pd' or 'vertices' field");
  }

  int inconclusive() const { return s_.strict ? kExitInconclusive : kExitOk; }

  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  int lattice_d(const std::string& file) {
    const DTable t = d_table(lattice_of(read(file)), s_.limits());
    if (s_.json) {
      emit(dtable_to_json(t));
      return kExitOk;
    }
    out_ << "det " << t.det << " rank " << t.rank << "\n";
    for (const auto& e : t.entries)
      out_ << vec(e.cls.rep) << "  min_norm " << to_string(e.min_norm) << "  d " << to_string(e.d) << "\n";
    return kExitOk;
  }

  int lattice_embed(const std::string& file, int n) {
    const IntegralLattice lat = lattice_of(read(file));
    if (n < 0) n = lat.rank();
    const EmbedResult r = embed(lat, n, s_.limits());
    if (s_.json) {
      Json j{{"status", to_string(r.status)}, {"n", n}, {"nodes", r.nodes}};
      j["embedding"] = r.witness ? embedding_to_json(*r.witness)["embedding"] : Json(nullptr);
      emit(j);
    } else {
      out_ << to_string(r.status) << " into Z^" << n << " (" << r.nodes << " nodes)\n";
      if (r.witness)
        for (const auto& row : r.witness->matrix) out_ << vec(row) << "\n";
    }
    return r.status == EmbedStatus::Inconclusive ? inconclusive() : kExitOk;
  }

  int lattice_overlattice(const std::string& file) {
    const FillingReport f = definite_filling_obstruction(lattice_of(read(file)), s_.limits());
    const std::string verdict = f.obstructed ? "obstructed" : "not-obstructed";
    if (s_.json) {
      Json list = Json::array();
      for (const auto& c : f.candidates) list.push_back({{"gram", gram_to_json(c.gram)["gram"]}, {"euclidean", c.euclidean}});
      emit(Json{{"overlattices", list}, {"verdict", verdict}});
      return kExitOk;
    }
    for (std::size_t i = 0; i < f.candidates.size(); ++i) {
      out_ << "overlattice " << i << ": " << (f.candidates[i].euclidean ? "euclidean" : "not euclidean") << "\n";
      for (const auto& row : f.candidates[i].gram) out_ << "  " << vec(row) << "\n";
    }
    out_ << "verdict " << verdict << "\n";
    return kExitOk;
  }

  int lattice_dplus(int n) {
    emit(gram_to_json(dplus_lattice(n).gram()));
    return kExitOk;
  }

  int lens_cf(Int p, Int q) {
    const ContFrac cf = neg_cont_frac(p, q);
    if (s_.json) {
      emit(Json{{"p", p}, {"q", q}, {"coeffs", cf.coeffs}});
    } else {
      out_ << p << "/" << q << " = " << vec(cf.coeffs) << "\n";
    }
    return kExitOk;
  }

  int lens_d_cmd(Int p, Int q) {
    const LensDTable t = lens_d(p, q, s_.limits());
    if (s_.json) {
      emit(lens_to_json(t));
      return kExitOk;
    }
    for (std::size_t i = 0; i < t.table.entries.size(); ++i)
      out_ << "label " << t.labels[i] << "  d " << to_string(t.table.entries[i].d) << "\n";
    return kExitOk;
  }

  int lens_T(Int p, Int q) {
    const Int m = odd_square_root(p);
    const LensDTable t = lens_d(p, q, s_.limits());
    Json classes = Json::array();
    for (std::size_t i = 0; i < t.table.entries.size(); ++i) {
      if (t.labels[i] % m != 0) continue;
      const auto& e = t.table.entries[i];
      if (s_.json) {
        classes.push_back({{"rep", e.cls.rep}, {"label", t.labels[i]}, {"d", to_string(e.d)}});
      } else {
        out_ << "label " << t.labels[i] << "  d " << to_string(e.d) << "\n";
      }
    }
    if (s_.json) emit(Json{{"p", p}, {"q", q}, {"m", m}, {"classes", classes}});
    return kExitOk;
  }

  int lens_slice(Int p, Int q) {
    const SliceReport r = slice_report(p, q, s_.limits());
    if (s_.json) {
      emit(slice_report_to_json(r));
    } else {
      out_ << "L(" << p << "," << q << "): condition one " << to_string(r.cond1.status) << ", condition two "
           << to_string(r.cond2.status) << "\n";
      for (const auto& e : r.cond1.evidence) out_ << "  T label " << e.label << "  d " << to_string(e.d) << "\n";
      for (const auto* side : {&r.cond2.first, &r.cond2.second})
        out_ << "  Lambda(" << p << "," << side->q << ") rank " << side->gram.size() << ": " << to_string(side->status)
             << " (" << side->nodes << " nodes)\n";
      out_ << "verdict " << to_string(r.verdict) << "\n";
    }
    return r.verdict == SliceVerdict::Inconclusive ? inconclusive() : kExitOk;
  }

  int lens_sweep(Int max_m) {
    SweepOptions o;
    o.limits = s_.limits();
    if (!s_.cache.empty()) o.cache_dir = s_.cache;
    const SweepReport r = equivalence_sweep(max_m, o);
    if (s_.json) {
      emit(sweep_to_json(r));
    } else {
      for (Int m = 1; m <= max_m; m += 2) {
        out_ << "p = " << m * m << ": passing q =";
        for (auto [p, q] : r.passing)
          if (p == m * m) out_ << " " << q;
        out_ << "\n";
      }
      out_ << r.rows.size() << " cases, " << r.mismatches.size() << " mismatches, " << r.inconclusive.size()
           << " inconclusive\n";
      for (auto [p, q] : r.mismatches) out_ << "mismatch at " << p << "/" << q << "\n";
    }
    if (!r.mismatches.empty()) return kExitInternal;
    return r.inconclusive.empty() ? kExitOk : inconclusive();
  }

  int link_tait(const std::string& file) {
    const Diagram d = parse_pd(pd_from_json(read(file)));
    const Checkerboard cb = checkerboard(d);
    emit(Json{{"black", graph_to_json(cb.black)}, {"white", graph_to_json(cb.white)}});
    return kExitOk;
  }

  int link_flow(const std::string& file) {
    const Json j = read(file);
    PlaneMultigraph g;
    if (j.contains("pd")) {
      g = tait_graph(checkerboard(parse_pd(pd_from_json(j))), s_.face_color());
    } else {
      g = graph_from_json(j);
    }
    const FlowLattice f = flow_lattice(g);
    Json out = gram_to_json(f.lattice.gram());
    out["cycle_basis"] = f.cycle_basis;
    emit(out);
    return kExitOk;
  }

  int link_dcompare(const std::string& a_file, const std::string& b_file, int sign) {
    const IntegralLattice a = lattice_of(read(a_file));
    const IntegralLattice b = lattice_of(read(b_file));
    Json result{{"sign", sign}};
    const bool conclusive = compare(a, b, sign, false, result);
    if (s_.strict_linking) {
      Json strict{{"sign", sign}};
      compare(a, b, sign, true, strict);
      result["strict_linking"] = strict;
    }
    if (s_.json) {
      emit(result);
    } else {
      out_ << result["verdict"].get<std::string>();
      if (!result["reason"].get<std::string>().empty()) out_ << ": " << result["reason"].get<std::string>();
      out_ << "\n";
      if (!result["witness"].is_null()) out_ << result["witness"].dump() << "\n";
      if (s_.strict_linking) out_ << "strict linking: " << result["strict_linking"]["verdict"].get<std::string>() << "\n";
    }
    return conclusive ? kExitOk : inconclusive();
  }

 private:
  bool compare(const IntegralLattice& a, const IntegralLattice& b, int sign, bool strict, Json& out) {
    out["witness"] = nullptr;
    out["reason"] = "";
    if (auto why = separating_statistic(a, b, sign, s_.limits())) {
      out["verdict"] = "not-isomorphic";
      out["reason"] = *why;
      return true;
    }
    DIsoOptions o;
    o.limits = s_.limits();
    o.strict_linking = strict;
    try {
      if (auto w = d_isomorphic(a, b, sign, o)) {
        out["verdict"] = "isomorphic";
        out["witness"] = torsor_witness_to_json(*w);
      } else {
        out["verdict"] = "not-isomorphic";
        out["reason"] = "search exhausted";
      }
      return true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GroupTooLarge) throw;
      out["verdict"] = "inconclusive";
      out["reason"] = e.what();
      return false;
    }
  }

  static std::string vec(const IntVec& v) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    s << "]";
    return s.str();
  }

  std::istream& in_;
  std::ostream& out_;
  const Settings& s_;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"d-invariants of definite lattices, lens space slice obstructions and Tait-graph lattices", "dlat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Settings s;
  app.add_flag("--json", s.json, "Machine-readable output");
  app.add_flag("--strict", s.strict, "Exit 3 when a result is inconclusive");
  app.add_flag("--strict-linking", s.strict_linking, "Also require the linking form to be preserved");
  app.add_option("--budget-nodes", s.budget_nodes, "Embedding search node budget")->check(CLI::PositiveNumber);
  app.add_option("--det-cap", s.det_cap, "Largest determinant whose classes are enumerated")->check(CLI::PositiveNumber);
  app.add_option("--group-cap", s.group_cap, "Largest discriminant group for isomorphism search")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", s.threads, "Worker threads, 0 for all cores");
  app.add_option("--color", s.color, "Tait graph colour")->check(CLI::IsMember({"black", "white"}));
  app.add_option("--cache", s.cache, "Directory for cached sweep results");

  Runner run(in, out, s);
  std::function<int()> action;
  auto sub = [](CLI::App* parent, const char* name, const char* help) {
    CLI::App* c = parent->add_subcommand(name, help);
    c->fallthrough();
    return c;
  };

  CLI::App* lattice = sub(&app, "lattice", "Lattice operations on a Gram matrix");
  lattice->require_subcommand(1);
  std::string file = "-", file2;
  int n = -1, sign = 1;
  Int p = 0, q = 0;

  CLI::App* cmd = sub(lattice, "d", "d-invariant table");
  cmd->add_option("file", file, "Gram, PD or graph JSON ('-' for stdin)");
  cmd->callback([&] { action = [&] { return run.lattice_d(file); }; });

  cmd = sub(lattice, "embed", "Search for an embedding into Z^n");
  cmd->add_option("file", file, "Gram, PD or graph JSON ('-' for stdin)");
  cmd->add_option("--n", n, "Target dimension (default: rank)")->check(CLI::NonNegativeNumber);
  cmd->callback([&] { action = [&] { return run.lattice_embed(file, n); }; });

  cmd = sub(lattice, "overlattice", "Unimodular overlattices and the definite-filling verdict");
  cmd->add_option("file", file, "Gram, PD or graph JSON ('-' for stdin)");
  cmd->callback([&] { action = [&] { return run.lattice_overlattice(file); }; });

  cmd = sub(lattice, "dplus", "Gram matrix of D_n^+");
  cmd->add_option("n", n, "Rank, a positive multiple of 4")->required();
  cmd->callback([&] { action = [&] { return run.lattice_dplus(n); }; });

  CLI::App* lens = sub(&app, "lens", "Lens spaces L(p, q)");
  lens->require_subcommand(1);
  auto lens_cmd = [&](const char* name, const char* help, int (Runner::*fn)(Int, Int)) {
    CLI::App* c = sub(lens, name, help);
    c->add_option("p", p, "Order of H_1")->required();
    c->add_option("q", q, "Coprime to p, 1 <= q < p")->required();
    c->callback([&, fn] { action = [&, fn] { return (run.*fn)(p, q); }; });
  };
  lens_cmd("cf", "Negative continued fraction of p/q", &Runner::lens_cf);
  lens_cmd("d", "d-invariants with c1 labels", &Runner::lens_d_cmd);
  lens_cmd("T", "Classes whose label is a multiple of sqrt(p)", &Runner::lens_T);
  lens_cmd("slice", "Both slice conditions and the verdict", &Runner::lens_slice);
  cmd = sub(lens, "sweep", "Compare the two conditions for all p = m^2, m <= max_m odd");
  cmd->add_option("max_m", p, "Largest odd m")->required();
  cmd->callback([&] { action = [&] { return run.lens_sweep(p); }; });

  CLI::App* link = sub(&app, "link", "Alternating diagrams and Tait graphs");
  link->require_subcommand(1);
  cmd = sub(link, "tait", "Black and white Tait graphs of a PD code");
  cmd->add_option("file", file, "PD JSON ('-' for stdin)");
  cmd->callback([&] { action = [&] { return run.link_tait(file); }; });

  cmd = sub(link, "flow", "Flow lattice of a graph, or of a diagram's Tait graph");
  cmd->add_option("file", file, "Graph or PD JSON ('-' for stdin)");
  cmd->callback([&] { action = [&] { return run.link_flow(file); }; });

  cmd = sub(link, "dcompare", "Look for an isomorphism of d-invariants");
  cmd->add_option("a", file, "Gram, PD or graph JSON")->required();
  cmd->add_option("b", file2, "Gram, PD or graph JSON")->required();
  cmd->add_option("--sign", sign, "+1 or -1")->check(CLI::IsMember({1, -1}));
  cmd->callback([&] { action = [&] { return run.link_dcompare(file, file2, sign); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace dlat

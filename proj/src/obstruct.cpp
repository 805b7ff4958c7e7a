#include "dlat/obstruct.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dlat/errors.hpp"
#include "dlat/json_io.hpp"
#include "dlat/lens.hpp"
#include "dlat/parallel.hpp"

namespace dlat {

namespace {

EmbeddingSide embed_side(Int p, Int q, const Limits& limits) {
  EmbeddingSide side;
  side.q = q;
  const IntegralLattice lat = linear_plumbing(p, q);
  side.gram = lat.gram();
  EmbedResult r = embed(lat, lat.rank(), limits);
  side.status = r.status;
  side.witness = std::move(r.witness);
  side.nodes = r.nodes;
  return side;
}

std::optional<Int> odd_root(Int p) {
  try {
    return odd_square_root(p);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<SliceReport> load_cached(const std::filesystem::path& file, Int p, Int q) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    SliceReport r = slice_report_from_json(Json::parse(in));
    if (r.p == p && r.q == q) return r;
  } catch (const std::exception&) {
    // Unreadable entries are recomputed and overwritten.
  }
  return std::nullopt;
}

void store_cached(const std::filesystem::path& file, const SliceReport& r) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << slice_report_to_json(r).dump() << "\n";
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

ConditionOne condition_one(Int p, Int q, const Limits& limits) {
  const Int m = odd_square_root(p);
  const LensDTable t = lens_d(p, q, limits);
  ConditionOne out;
  out.status = Status::Pass;
  for (std::size_t i = 0; i < t.table.entries.size(); ++i) {
    if (t.labels[i] % m != 0) continue;
    out.evidence.push_back({t.labels[i], t.table.entries[i].d});
    if (t.table.entries[i].d != 0) out.status = Status::Fail;
  }
  std::sort(out.evidence.begin(), out.evidence.end(),
            [](const LabelledD& a, const LabelledD& b) { return a.label < b.label; });
  return out;
}

ConditionTwo condition_two(Int p, Int q, const Limits& limits) {
  ConditionTwo out;
  out.first = embed_side(p, q, limits);
  out.second = embed_side(p, p == 1 ? 1 : p - q, limits);
  const EmbedStatus a = out.first.status, b = out.second.status;
  if (a == EmbedStatus::DoesNotEmbed || b == EmbedStatus::DoesNotEmbed) {
    out.status = Status::Fail;
  } else if (a == EmbedStatus::Embeds && b == EmbedStatus::Embeds) {
    out.status = Status::Pass;
  } else {
    out.status = Status::Inconclusive;
  }
  return out;
}

SliceReport slice_report(Int p, Int q, const Limits& limits) {
  SliceReport r;
  r.p = p;
  r.q = q;
  r.square = odd_root(p);
  if (r.square) r.cond1 = condition_one(p, q, limits);
  r.cond2 = condition_two(p, q, limits);
  if (r.cond1.status == Status::Fail || r.cond2.status == Status::Fail) {
    r.verdict = SliceVerdict::Obstructed;
  } else if (r.cond2.status == Status::Inconclusive) {
    r.verdict = SliceVerdict::Inconclusive;
  } else {
    r.verdict = SliceVerdict::PassesBoth;
  }
  return r;
}

std::string cache_key(Int p, Int q, const Limits& limits) {
  std::ostringstream text;
  text << p << "," << q << "," << limits.budget_nodes << "," << limits.det_cap << "," << limits.group_cap << ","
       << kVersion;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text.str()) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SweepReport equivalence_sweep(Int max_m, const SweepOptions& options) {
  if (max_m < 1 || max_m % 2 == 0) throw Error(ErrorCode::BadInput, "max_m must be a positive odd integer");
  std::vector<std::pair<Int, Int>> jobs;
  for (Int m = 1; m <= max_m; m += 2) {
    const Int p = m * m;
    if (p == 1) jobs.emplace_back(1, 1);
    for (Int q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) jobs.emplace_back(p, q);
  }
  std::optional<std::filesystem::path> dir;
  if (options.cache_dir) {
    dir = *options.cache_dir;
    std::filesystem::create_directories(*dir);
  }
  // Jobs are the unit of parallelism; each job runs single-threaded.
  Limits inner = options.limits;
  inner.threads = 1;
  SweepReport out;
  out.max_m = max_m;
  out.rows.resize(jobs.size());
  parallel_for(jobs.size(), options.limits.threads, [&](std::size_t i) {
    const auto [p, q] = jobs[i];
    std::filesystem::path file;
    if (dir) {
      file = *dir / (cache_key(p, q, inner) + ".json");
      if (auto hit = load_cached(file, p, q)) {
        out.rows[i] = std::move(*hit);
        return;
      }
    }
    out.rows[i] = slice_report(p, q, inner);
    if (dir) store_cached(file, out.rows[i]);
  });
  for (const auto& r : out.rows) {
    const std::pair<Int, Int> pq{r.p, r.q};
    if (r.cond1.status == Status::Inconclusive || r.cond2.status == Status::Inconclusive) {
      out.inconclusive.push_back(pq);
    } else if (r.cond1.status != r.cond2.status) {
      out.mismatches.push_back(pq);
    } else if (r.cond1.status == Status::Pass) {
      out.passing.push_back(pq);
    }
  }
  return out;
}

FillingReport definite_filling_obstruction(const IntegralLattice& lat, const Limits& limits) {
  FillingReport out;
  std::vector<IntegralLattice> candidates;
  if (lat.is_unimodular()) {
    candidates.push_back(lat);
  } else {
    for (auto& o : unimodular_overlattices(lat, limits)) candidates.push_back(o.lattice);
  }
  out.obstructed = true;
  for (const auto& c : candidates) {
    const bool euclidean = is_euclidean(c, limits);
    out.candidates.push_back({c.gram(), euclidean});
    if (euclidean) out.obstructed = false;
  }
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::NotApplicable: return "na";
  }
  return "?";
}

std::string to_string(SliceVerdict v) {
  switch (v) {
    case SliceVerdict::Obstructed: return "obstructed";
    case SliceVerdict::PassesBoth: return "passes-both";
    case SliceVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(EmbedStatus s) {
  switch (s) {
    case EmbedStatus::Embeds: return "embeds";
    case EmbedStatus::DoesNotEmbed: return "does-not-embed";
    case EmbedStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace dlat

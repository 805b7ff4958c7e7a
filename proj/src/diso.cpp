#include "dlat/diso.hpp"

#include <algorithm>
#include <map>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

// X(L) as a torsor: classes indexed as in d_table, group elements by mixed-radix
// index, class k = origin + elem_of_class[k].
struct Torsor {
  IntegralLattice lat;
  DTable table;
  DiscriminantGroup group;
  std::vector<IntVec> coords;  // element index -> coordinates
  std::vector<std::size_t> elem_of_class, class_of_elem;
  std::vector<std::size_t> conj;  // class -> conjugate class

  Torsor(const IntegralLattice& l, const Limits& limits) : lat(l) {
    table = d_table(lat, limits);
    group = discriminant_group(lat);
    const std::size_t n = table.entries.size();
    coords.resize(n);
    for (std::size_t i = 0; i < n; ++i) coords[i] = group.element_at(i);
    elem_of_class.resize(n);
    class_of_elem.assign(n, n);
    const IntVec& origin = table.entries[0].cls.rep;
    for (std::size_t k = 0; k < n; ++k) {
      IntVec diff(origin.size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (table.entries[k].cls.rep[i] - origin[i]) / 2;
      elem_of_class[k] = group.index_of(group.element_of(diff));
      class_of_elem[elem_of_class[k]] = k;
    }
    std::vector<CharClass> classes;
    for (const auto& e : table.entries) classes.push_back(e.cls);
    conj.resize(n);
    const auto conjugated = conjugates(lat, classes, limits.det_cap);
    for (std::size_t k = 0; k < n; ++k) conj[k] = *table.find(conjugated[k]);
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < group.orders.size(); ++k)
      idx = idx * group.orders[k] + static_cast<std::size_t>((coords[a][k] + coords[b][k]) % group.orders[k]);
    return idx;
  }
  std::size_t scale(std::size_t a, Int m) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < group.orders.size(); ++k)
      idx = idx * group.orders[k] + static_cast<std::size_t>(mod_pos(coords[a][k] * m, group.orders[k]));
    return idx;
  }
  std::size_t shift(std::size_t cls, std::size_t elem) const { return class_of_elem[add(elem_of_class[cls], elem)]; }
  // Element g with conjugate(x) = x + g.
  std::size_t conj_offset(std::size_t cls) const {
    IntVec neg = table.entries[cls].cls.rep;
    for (auto& v : neg) v = -v;
    return group.index_of(group.element_of(neg));
  }
  Int order_of(std::size_t a) const {
    Int o = 1;
    for (std::size_t k = 0; k < group.orders.size(); ++k) {
      const Int s = group.orders[k];
      const Int ok = s / gcd_int(coords[a][k], s);
      o = o / gcd_int(o, ok) * ok;
    }
    return o;
  }
};

std::vector<Rational> sorted_d(const DTable& t, int sign) {
  std::vector<Rational> v;
  for (const auto& e : t.entries) v.push_back(sign * e.d);
  std::sort(v.begin(), v.end());
  return v;
}

std::optional<std::string> separate(const Torsor& a, const Torsor& b, int sign) {
  if (a.table.det != b.table.det) {
    return "determinants differ: " + std::to_string(a.table.det) + " vs " + std::to_string(b.table.det);
  }
  if (a.group.orders != b.group.orders) return "discriminant groups differ";
  if (sorted_d(a.table, sign) != sorted_d(b.table, 1)) return "d-value multisets differ";
  return std::nullopt;
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::BadInput, "sign must be +1 or -1");
}

void check_group_cap(const IntegralLattice& lat, const Limits& limits) {
  if (lat.det() > limits.group_cap) {
    throw Error(ErrorCode::GroupTooLarge,
                "group order " + lat.det().str() + " exceeds cap " + std::to_string(limits.group_cap));
  }
}

class IsoSearch {
 public:
  IsoSearch(const Torsor& a, const Torsor& b, int sign, bool strict)
      : a_(a), b_(b), sign_(sign), strict_(strict), n_(a.table.entries.size()) {
    // Intern d-values: a's are multiplied by sign.
    std::map<Rational, int> ids;
    auto intern = [&](const Rational& r) { return ids.try_emplace(r, static_cast<int>(ids.size())).first->second; };
    for (const auto& e : a_.table.entries) da_.push_back(intern(sign_ * e.d));
    for (const auto& e : b_.table.entries) db_.push_back(intern(e.d));
    rank_ = a_.group.orders.size();
    gen_index_.resize(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      IntVec e(rank_, 0);
      e[i] = 1;
      gen_index_[i] = a_.group.index_of(e);
    }
  }

  std::optional<TorsorIsoWitness> run() {
    const std::size_t x0 = choose_base();
    const std::size_t g0 = a_.conj_offset(x0);
    const IntVec& g0c = a_.coords[g0];
    last_needed_ = -1;
    for (std::size_t i = 0; i < rank_; ++i)
      if (g0c[i] != 0) last_needed_ = static_cast<int>(i);
    const bool x0_self = a_.conj[x0] == x0;
    for (std::size_t y0 = 0; y0 < n_; ++y0) {
      if (db_[y0] != da_[x0]) continue;
      if (x0_self != (b_.conj[y0] == y0)) continue;
      x0_ = x0;
      y0_ = y0;
      g0_ = g0;
      h0_ = b_.conj_offset(y0);
      images_.assign(rank_, 0);
      span_.assign(1, {0, 0});
      used_.assign(n_, false);
      used_[0] = true;
      if (last_needed_ < 0 && h0_ != 0) continue;
      if (extend(0)) {
        TorsorIsoWitness w;
        w.sign = sign_;
        for (std::size_t i = 0; i < rank_; ++i) w.group_iso.push_back(b_.coords[images_[i]]);
        w.base_from = a_.table.entries[x0].cls.rep;
        w.base_to = b_.table.entries[y0].cls.rep;
        return w;
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t choose_base() const {
    std::map<int, int> freq;
    for (int d : da_) ++freq[d];
    std::size_t best = 0;
    auto key = [&](std::size_t k) { return std::make_tuple(freq.at(da_[k]), a_.conj[k] != k, k); };
    for (std::size_t k = 1; k < n_; ++k)
      if (key(k) < key(best)) best = k;
    return best;
  }

  std::size_t image_of(std::size_t elem) const {
    std::size_t out = 0;
    for (std::size_t i = 0; i < rank_; ++i)
      if (a_.coords[elem][i] != 0) out = b_.add(out, b_.scale(images_[i], a_.coords[elem][i]));
    return out;
  }

  bool linking_ok(std::size_t i, std::size_t t) const {
    for (std::size_t j = 0; j <= i; ++j) {
      const IntVec& tj = j == i ? b_.coords[t] : b_.coords[images_[j]];
      IntVec gi(rank_, 0), gj(rank_, 0);
      gi[i] = 1;
      gj[j] = 1;
      Rational lhs = b_.group.linking_form(b_.coords[t], tj);
      Rational rhs = a_.group.linking_form(gi, gj) * sign_;
      Rational diff = lhs - rhs;
      if (boost::multiprecision::denominator(diff) != 1) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == rank_) return true;
    const Int s = a_.group.orders[i];
    const std::size_t span_size = span_.size();
    for (std::size_t t = 0; t < n_; ++t) {
      if (s % b_.order_of(t) != 0) continue;
      if (strict_ && !linking_ok(i, t)) continue;
      // New elements k*g_i + old, k = 1..s-1.
      bool ok = true;
      std::size_t step_a = 0, step_b = 0;
      for (Int k = 1; k < s && ok; ++k) {
        step_a = a_.add(step_a, gen_index_[i]);
        step_b = b_.add(step_b, t);
        for (std::size_t q = 0; q < span_size; ++q) {
          const std::size_t ea = a_.add(step_a, span_[q].first), eb = b_.add(step_b, span_[q].second);
          if (used_[eb] || db_[b_.shift(y0_, eb)] != da_[a_.shift(x0_, ea)]) {
            ok = false;
            break;
          }
          used_[eb] = true;
          span_.emplace_back(ea, eb);
        }
      }
      images_[i] = t;
      if (ok && static_cast<int>(i) == last_needed_ && image_of(g0_) != h0_) ok = false;
      if (ok && extend(i + 1)) return true;
      for (std::size_t q = span_size; q < span_.size(); ++q) used_[span_[q].second] = false;
      span_.resize(span_size);
    }
    return false;
  }

  const Torsor& a_;
  const Torsor& b_;
  int sign_;
  bool strict_;
  std::size_t n_, rank_ = 0;
  std::vector<int> da_, db_;
  std::vector<std::size_t> gen_index_;
  std::size_t x0_ = 0, y0_ = 0, g0_ = 0, h0_ = 0;
  int last_needed_ = -1;
  std::vector<std::size_t> images_;
  std::vector<std::pair<std::size_t, std::size_t>> span_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::string> separating_statistic(const IntegralLattice& a, const IntegralLattice& b, int sign,
                                                const Limits& limits) {
  check_sign(sign);
  if (a.det() != b.det()) return "determinants differ: " + a.det().str() + " vs " + b.det().str();
  return separate(Torsor(a, limits), Torsor(b, limits), sign);
}

std::optional<TorsorIsoWitness> d_isomorphic(const IntegralLattice& a, const IntegralLattice& b, int sign,
                                             const DIsoOptions& options) {
  check_sign(sign);
  if (a.det() != b.det()) return std::nullopt;
  check_group_cap(a, options.limits);
  Torsor ta(a, options.limits), tb(b, options.limits);
  if (separate(ta, tb, sign)) return std::nullopt;
  return IsoSearch(ta, tb, sign, options.strict_linking).run();
}

bool verify_torsor_iso(const IntegralLattice& a, const IntegralLattice& b, const TorsorIsoWitness& w,
                       const Limits& limits) {
  if (w.sign != 1 && w.sign != -1) return false;
  Torsor ta(a, limits), tb(b, limits);
  if (ta.group.orders != tb.group.orders || w.group_iso.size() != ta.group.orders.size()) return false;
  const std::size_t n = ta.table.entries.size();
  std::vector<std::size_t> images;
  for (const auto& im : w.group_iso) {
    if (im.size() != tb.group.orders.size()) return false;
    IntVec reduced(im.size());
    for (std::size_t k = 0; k < im.size(); ++k) reduced[k] = mod_pos(im[k], tb.group.orders[k]);
    images.push_back(tb.group.index_of(reduced));
  }
  if (!is_characteristic(a, w.base_from) || !is_characteristic(b, w.base_to)) return false;
  auto x0 = ta.table.find(canonical_class(a, w.base_from, limits.det_cap));
  auto y0 = tb.table.find(canonical_class(b, w.base_to, limits.det_cap));
  if (!x0 || !y0) return false;
  // phi on every class.
  std::vector<std::size_t> phi(n);
  std::vector<bool> hit(n, false);
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t img = 0;
    for (std::size_t i = 0; i < images.size(); ++i) img = tb.add(img, tb.scale(images[i], ta.coords[g][i]));
    const std::size_t x = ta.shift(*x0, g), y = tb.shift(*y0, img);
    if (hit[y]) return false;
    hit[y] = true;
    phi[x] = y;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (tb.table.entries[phi[x]].d != w.sign * ta.table.entries[x].d) return false;
    if (phi[ta.conj[x]] != tb.conj[phi[x]]) return false;
  }
  return true;
}

Rational total_d(const IntegralLattice& lat, const Limits& limits) {
  return d_table(lat, limits).total();
}

GlueCheck glue_inequality_check(const IntegralLattice& a, const IntegralLattice& b, const CharClass& x,
                                const CharClass& y, const std::optional<EmbeddingWitness>& embedding,
                                const Limits& limits) {
  if (!embedding) throw Error(ErrorCode::MissingEmbedding, "no embedding of the sum was supplied");
  IntegralLattice sum = direct_sum(a, b);
  const int n = sum.rank();
  const IntMatrix& w = embedding->matrix;
  if (static_cast<int>(w.size()) != n || (n > 0 && static_cast<int>(w[0].size()) != n) ||
      !verify_witness(sum, *embedding)) {
    throw Error(ErrorCode::MissingEmbedding, "embedding is not a square witness for the sum");
  }
  if (!is_characteristic(a, x.rep) || !is_characteristic(b, y.rep)) {
    throw Error(ErrorCode::BadInput, "class representative is not characteristic");
  }
  GlueCheck out;
  auto d_of = [&](const IntegralLattice& lat, const CharClass& c) {
    return (min_char_norm(lat, canonical_class(lat, c.rep, limits.det_cap)) - lat.rank()) / 4;
  };
  out.sum = d_of(a, x) + d_of(b, y);
  // chi_i = <w_i, z>; solve W z = (chi, chi') exactly.
  IntVec chi = x.rep;
  chi.insert(chi.end(), y.rep.begin(), y.rep.end());
  Adjugate adj = adjugate(w);
  out.glued = true;
  for (int i = 0; i < n && out.glued; ++i) {
    BigInt s = 0;
    for (int j = 0; j < n; ++j) s += adj.adj[i][j] * chi[j];
    if (s % adj.det != 0) {
      out.glued = false;
      break;
    }
    BigInt z = s / adj.det;
    if (z % 2 == 0) out.glued = false;
  }
  out.holds = !out.glued || out.sum >= 0;
  return out;
}

}  // namespace dlat

#include "dlat/diso.hpp"
#include "dlat/errors.hpp"
#include "dlat/tait.hpp"

namespace dlat {

MutationComparison mutation_compare(const Diagram& d1, const Diagram& d2, const DIsoOptions& options) {
  for (const Diagram* d : {&d1, &d2}) {
    if (!d->connected || !d->alternating || !d->reduced) {
      throw Error(ErrorCode::BadInput, "mutation comparison needs connected, reduced, alternating diagrams");
    }
  }
  const IntegralLattice a = diagram_lattice(d1), b = diagram_lattice(d2);
  MutationComparison out;
  if (a.det() != b.det()) {
    out.verdict = MutationVerdict::NotIsomorphic;
    out.reason = "determinants differ: " + a.det().str() + " vs " + b.det().str();
    return out;
  }
  if (a.det() > options.limits.group_cap || a.det() > options.limits.det_cap) {
    out.reason = "group order " + a.det().str() + " above cap";
    return out;
  }
  if (auto reason = separating_statistic(a, b, 1, options.limits)) {
    out.verdict = MutationVerdict::NotIsomorphic;
    out.reason = *reason;
    return out;
  }
  out.witness = d_isomorphic(a, b, 1, options);
  if (out.witness) {
    out.verdict = MutationVerdict::Isomorphic;
    out.reason = "witness found";
  } else {
    out.verdict = MutationVerdict::NotIsomorphic;
    out.reason = "exhaustive search found no witness";
  }
  return out;
}

}  // namespace dlat

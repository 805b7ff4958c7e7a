#pragma once

// JSON forms of the library's inputs and results. Rationals are exact strings
// ("p/q", or "p" when integral). Readers throw BadInput naming the field.

#include <json.hpp>

#include "dlat/diso.hpp"
#include "dlat/embed.hpp"
#include "dlat/lattice.hpp"
#include "dlat/lens.hpp"
#include "dlat/obstruct.hpp"
#include "dlat/tait.hpp"

namespace dlat {

using Json = nlohmann::json;

// {"gram": [[...], ...]}
Json gram_to_json(const IntMatrix& gram);
IntMatrix gram_from_json(const Json& j);

// {"det", "rank", "classes": [{"rep", "min_norm", "d"}, ...]}
Json dtable_to_json(const DTable& t);
DTable dtable_from_json(const Json& j);
// The same with "p", "q" and a "label" per class.
Json lens_to_json(const LensDTable& t);

// {"embedding": [[...], ...]}
Json embedding_to_json(const EmbeddingWitness& w);
EmbeddingWitness embedding_from_json(const Json& j);

// {"sign", "group_iso": [[gen_index, image_coeffs], ...], "base": {"from", "to"}}
Json torsor_witness_to_json(const TorsorIsoWitness& w);
TorsorIsoWitness torsor_witness_from_json(const Json& j);

// {"vertices": n, "edges": [[u, v], ...], "rotations": [[[edge, end], ...], ...]}
Json graph_to_json(const PlaneMultigraph& g);
PlaneMultigraph graph_from_json(const Json& j);

// {"pd": [[a, b, c, d], ...]}
Json pd_to_json(const PdCode& pd);
PdCode pd_from_json(const Json& j);

Json slice_report_to_json(const SliceReport& r);
SliceReport slice_report_from_json(const Json& j);
Json sweep_to_json(const SweepReport& r);

}  // namespace dlat

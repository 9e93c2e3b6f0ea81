#pragma once

#include <string>

#include "json.hpp"
#include "prbox/box_table.hpp"
#include "prbox/commitment.hpp"
#include "prbox/discrimination.hpp"
#include "prbox/purification.hpp"
#include "prbox/tensor.hpp"
#include "prbox/transforms.hpp"

namespace prbox {

using Json = nlohmann::json;

/// Exact fraction text, or a decimal approximation for display.
std::string number_text(const Dyadic& value, bool decimal = false);

// File formats. Party and site indices are 1-based in JSON.

/// {"entries": [{"a": "01", "p": "1/2", "x": "10"}, ...], "n_parties": N};
/// zero entries are omitted.
Json to_json(const BoxTable& table, bool decimal = false);
BoxTable table_from_json(const Json& j);

/// {"entries": ["1", "0", "1"], "n_parties": 1, "role": "state"}.
Json to_json(const GptTensor& tensor, bool decimal = false);
GptTensor tensor_from_json(const Json& j);

/// {"perm": [2, 1], "sites": [{"k": 1, "s": "+"}, ...]}.
Json to_json(const ReversibleTransform& t);
ReversibleTransform transform_from_json(const Json& j);

/// {"convention": id, "terms": [{"sites": [i1, ..., iN]}, ...]}.
Json to_json(const TwoOutcomePovm& povm);
TwoOutcomePovm povm_from_json(const Json& j);

Json to_json(const Transcript& t);
Json to_json(const AuditReport& r);
Json to_json(const SweepSummary& s, bool include_reports = false);
Json to_json(const PurificationReport& r, bool decimal = false);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

/// Reads a table or tensor file; kParse on unreadable or malformed input.
Json read_json_file(const std::string& path);

}  // namespace prbox

// SPDX-License-Identifier: MIT
#pragma once

#include "brank/certify.hpp"
#include "brank/completion.hpp"
#include "brank/ideal_probe.hpp"
#include "brank/phylo.hpp"
#include "brank/poly.hpp"
#include "brank/tensor.hpp"
#include "brank/words.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace brank {

using Json = nlohmann::ordered_json;

// Tensors: {"dims": [...], "field": "rational", "entries": ["1", "-2/3", ...]}
// in row-major order, or "format": "sparse" with entries [[index...], value].
// Float tensors store numbers.
Json to_json(const QTensor& t, bool sparse = false);
Json to_json(const FTensor& t);
QTensor qtensor_from_json(const Json& j);
FTensor ftensor_from_json(const Json& j);

/// Digit string when the alphabet has at most 10 symbols, else [[pos, sym], ...].
Json to_json(const Word& w);
Word word_from_json(const Json& j, unsigned alphabet);
/// Digit-string parsing with a DataError on bad input.
Word parse_word(std::string_view digits, unsigned alphabet);

/// [[1], [2, 3]]
Json to_json(const SubsElement& s);
SubsElement subs_from_json(const Json& j);
/// Accepts JSON ("[[1],[2,3]]") or set notation ("({1},{2,3})").
SubsElement parse_subs(std::string_view text);

Json to_json(const IncMap& pi);

/// {"alphabet": n, "terms": [{"coef": "c", "monomial": [[word, exp], ...]}, ...],
/// "text": "..."}
Json to_json(const SparsePoly& f);
SparsePoly poly_from_json(const Json& j);

Json to_json(const MinorSpec& s);
Json to_json(const MinorEvidence& e);
Json to_json(const CertReport& r);

/// {"p", "n", "q", "values": [[word, value], ...]}. Words supported in [p]
/// apply to the core and every slab; an entry [word, value, position] sets
/// only the slab at that position.
Json to_json(const BoundaryData& b);
BoundaryData boundary_from_json(const Json& j);

/// {"p", "rows": [words], "cols": [words], "I": [positions]}
Json to_json(const Pivot& p);
Pivot pivot_from_json(const Json& j, unsigned alphabet);

Json to_json(const ProbeResult& r);
Json to_json(const PhyloReport& r);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace brank

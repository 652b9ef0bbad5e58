#pragma once

// JSON and CSV encodings of the library types.
//
//   IntSet        [1, 2, 3]
//   CycSet        {"mod": n, "residues": [...]}
//   ConvTable     {"entries": [[point, count], ...]} sorted by point
//
// Floating-point values are rounded to 12 significant digits before they are
// written so identical runs produce byte-identical output.

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/randomsum.hpp"
#include "sumsetlab/setcore.hpp"
#include "sumsetlab/structure.hpp"

#include "json.hpp"

#include <string>

namespace sumsetlab {

using Json = nlohmann::json;

double round12(double v);
std::string format12(double v);

Json to_json(const IntSet& s);
Json to_json(const CycSet& s);
Json to_json(const ConvTable& t);
Json to_json(const BoundCheck& c);
Json to_json(const APDescriptor& ap);
Json to_json(const DoublingReport& r);
Json to_json(const WrapResult& w);
Json to_json(const SubgroupResult& g);
Json to_json(const ProgressionCover& c);
Json to_json(const NotMet& n);
Json to_json(const ProbEstimate& e);
Json to_json(const PkTable& t);

IntSet int_set_from_json(const Json& j);
CycSet cyc_set_from_json(const Json& j);
ConvTable conv_table_from_json(const Json& j);

/// Newline-delimited integers (blank lines and '#' comments skipped).
IntSet int_set_from_lines(const std::string& text);

/// CSV with columns k, method, point, lower, upper, stderr, p_k, p_k_sigma.
std::string pk_table_csv(const PkTable& t);

std::string read_text_file(const std::string& path);

} // namespace sumsetlab

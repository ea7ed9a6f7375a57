#pragma once

#include <string>
#include <vector>

#include "ftbfs/approx.hpp"
#include "ftbfs/builder.hpp"
#include "ftbfs/lower_bound.hpp"
#include "ftbfs/structure_analysis.hpp"
#include "ftbfs/verifier.hpp"
#include "json.hpp"

namespace ftbfs::cli {

using nlohmann::json;

inline constexpr int kSchema = 1;

json edge_json(const Graph& g, EdgeId id);
json edges_json(const Graph& g, const std::vector<EdgeId>& ids);

json structure_json(const FtStructure& h);
json verify_json(const Graph& g, const VerifyReport& r, int f);
json star_json(const StarInstance& star);
json class_report_json(const Graph& g, const PathClassReport& r);
json kernel_json(const KernelGraph& k);
json structural_json(const StructuralReport& r);
json approx_json(const ApproxResult& r);

// "0,3,5" -> {0, 3, 5}; throws std::invalid_argument on junk.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace ftbfs::cli

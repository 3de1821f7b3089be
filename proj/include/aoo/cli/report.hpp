#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "aoo/bounds/bounds.hpp"

namespace aoo {

inline constexpr const char* kSchema = "tierlang/1";

// Each report is a JSON object tagged with `schema`; the text renderings
// are derived from it so both outputs agree.

nlohmann::json infer_report(const ResolvedProgram& flat);
std::string infer_text(const nlohmann::json& r);

nlohmann::json safety_report(const ResolvedProgram& flat);
std::string safety_text(const nlohmann::json& r, bool branchwise);

struct BoundRequest {
  std::vector<unsigned long> validate;  // sizes, empty for none
  bool per_loop = false;
  std::uint64_t budget = 10'000'000;
};
nlohmann::json bound_report(const Program& parsed, const ResolvedProgram& flat, const BoundRequest& req);
std::string bound_text(const nlohmann::json& r);

nlohmann::json run_report(const ResolvedProgram& flat, std::uint64_t budget);
std::string run_text(const nlohmann::json& r);

// Verdicts of one program as catalogued: typable, safe, n1, nu, lambda.
nlohmann::json verdicts(const ResolvedProgram& flat);

// Checks every catalog entry against its expected verdicts. Entry paths are
// relative to the catalog file.
nlohmann::json corpus_report(const std::string& catalog_path);
std::string corpus_text(const nlohmann::json& r);

}  // namespace aoo

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opgp/errors.hpp"
#include "opgp/orealg/ring.hpp"

namespace opgp {

/// A stage that failed while running; carries the stage label.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& message)
      : Error("stage '" + stage + "': " + message), stage_(stage) {}
  [[nodiscard]] const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Parsed and name-checked scenario. Stage and check tables are kept as
/// JSON and interpreted when run.
struct Scenario {
  std::string name;
  std::string source;
  RingPtr ring;
  nlohmann::ordered_json matrices;
  nlohmann::ordered_json vectors;
  std::vector<nlohmann::ordered_json> stages;
  std::vector<nlohmann::ordered_json> checks;
};

Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunReport {
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> artifacts;
  [[nodiscard]] bool passed() const;
};

struct RunOptions {
  /// Artifacts are written only when set.
  std::optional<std::filesystem::path> out_dir;
  /// Progress lines; may be null.
  std::ostream* log = nullptr;
};

RunReport run_scenario(const Scenario& s, const RunOptions& options = {});

std::string format_report(const RunReport& r);

}  // namespace opgp

#pragma once

// Report serialization (JSON and CSV) and the on-disk resolution cache.

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "pcoh/invariants.hpp"

namespace pcoh {

std::string type_string(const GroupType& t);

nlohmann::json report_json(const InvariantReport& r);
std::string csv_header();
std::string csv_row(const InvariantReport& r);

/// Resolutions keyed by presentation hash; files are written to a temporary
/// name and renamed into place.
class ResolutionCache {
 public:
  explicit ResolutionCache(std::filesystem::path dir);
  /// The explicit directory if given, else PCOH_CACHE_DIR, else none.
  static std::optional<ResolutionCache> locate(const std::string& explicit_dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const PcPresentation& pres) const;

  /// Loads a stored resolution reaching at least the degree, or computes and stores one.
  ResolutionPtr get(const GroupPtr& g, unsigned degree, const ResolutionOptions& options) const;
  ResolutionProvider provider() const;

  std::size_t hits() const { return stats_->hits; }
  std::size_t misses() const { return stats_->misses; }

 private:
  struct Stats {
    std::atomic<std::size_t> hits{0}, misses{0};
  };
  std::filesystem::path dir_;
  std::shared_ptr<Stats> stats_ = std::make_shared<Stats>();
};

}  // namespace pcoh

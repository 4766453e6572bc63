#include "pcoh/report.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "pcoh/catalog.hpp"

namespace pcoh {

namespace {

nlohmann::json value_or_null(const Certified& c) {
  if (!c.value) return nullptr;
  return *c.value;
}

std::string csv_value(const Certified& c) { return c.value ? std::to_string(*c.value) : std::string(); }

}  // namespace

std::string type_string(const GroupType& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.entries.size(); ++i) out += (i ? "," : "") + std::to_string(t.entries[i]);
  return out + "]";
}

nlohmann::json report_json(const InvariantReport& r) {
  nlohmann::json j;
  j["group_id"] = r.group_id;
  j["p"] = r.p;
  j["order"] = r.order;
  j["rank"] = r.rank;
  j["center_rank"] = r.center_rank;
  j["p_central"] = r.p_central;
  j["type"] = r.type.entries;
  j["e"] = value_or_null(r.e);
  j["h"] = value_or_null(r.h);
  j["d0"] = value_or_null(r.d0);
  j["d1"] = value_or_null(r.d1);
  j["e_prime"] = value_or_null(r.e_prime);
  j["e_double_prime"] = value_or_null(r.e_double_prime);
  j["cess_nonzero"] = r.cess_nonzero ? nlohmann::json(*r.cess_nonzero) : nlohmann::json(nullptr);
  j["truncation_degree"] = r.truncation_degree;
  j["certified"] = {
      {"type", r.type.certified},
      {"e", r.e.certified},
      {"h", r.h.certified},
      {"d0", r.d0.certified},
      {"d1", r.d1.certified},
      {"e_prime", r.e_prime.certified},
      {"e_double_prime", r.e_double_prime.certified},
  };
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string csv_header() { return "order,id,type,e,h,d0,d1,e_prime,e_dprime,p_central,certified"; }

std::string csv_row(const InvariantReport& r) {
  const bool all = r.type.certified && r.e.certified && r.h.certified && r.d0.certified &&
                   (!r.d1.value || r.d1.certified) && r.e_prime.certified && r.e_double_prime.certified;
  std::ostringstream out;
  out << r.order << ',' << r.group_id << ",\"" << type_string(r.type) << "\"," << csv_value(r.e) << ','
      << csv_value(r.h) << ',' << csv_value(r.d0) << ',' << csv_value(r.d1) << ',' << csv_value(r.e_prime) << ','
      << csv_value(r.e_double_prime) << ',' << (r.p_central ? "true" : "false") << ',' << (all ? "true" : "false");
  return out.str();
}

ResolutionCache::ResolutionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<ResolutionCache> ResolutionCache::locate(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return ResolutionCache(explicit_dir);
  if (const char* env = std::getenv("PCOH_CACHE_DIR"); env && *env) return ResolutionCache(env);
  return std::nullopt;
}

std::filesystem::path ResolutionCache::path_for(const PcPresentation& pres) const {
  return dir_ / (presentation_hash(pres) + ".cohres");
}

ResolutionPtr ResolutionCache::get(const GroupPtr& g, unsigned degree, const ResolutionOptions& options) const {
  const auto hash = presentation_hash(g->presentation());
  const auto path = path_for(g->presentation());
  if (std::ifstream in(path); in) {
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      if (auto r = deserialize_resolution(g, ss.str(), hash, options); r && r->max_degree() >= degree) {
        ++stats_->hits;
        return std::make_shared<const Resolution>(std::move(*r));
      }
    } catch (const std::exception&) {
    }
  }
  ++stats_->misses;
  auto res = std::make_shared<const Resolution>(g, degree, options);
  std::ostringstream tag;
  tag << std::this_thread::get_id();
  const auto tmp = path.string() + ".tmp." + tag.str();
  {
    std::ofstream out(tmp);
    out << serialize_resolution(*res, hash);
  }
  std::filesystem::rename(tmp, path);
  return res;
}

ResolutionProvider ResolutionCache::provider() const {
  return [self = *this](const GroupPtr& g, unsigned degree, const ResolutionOptions& options) {
    return self.get(g, degree, options);
  };
}

}  // namespace pcoh

#pragma once

// Built-in groups and the .pcp text format.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcoh/pgroup.hpp"

namespace pcoh {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PcpParseError : public std::runtime_error {
 public:
  PcpParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Fingerprint {
  std::size_t order = 0;
  unsigned center_rank = 0;
  unsigned p_rank = 0;
  bool p_central = false;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint compute_fingerprint(const PGroup& g);

/// Published values used to cross-check a computation.
struct ReferenceValues {
  std::vector<unsigned> type;
  std::optional<int> e;
  std::optional<int> h;
  std::optional<int> d0;
  std::optional<int> d1;
  std::optional<int> e_prime;
  std::optional<unsigned> depth;
  std::optional<unsigned> rank;
};

struct CatalogEntry {
  std::string id;
  PcPresentation presentation;
  Fingerprint expected;
  std::optional<ReferenceValues> reference;
};

/// Parses .pcp text.  Words must be in normal form.
PcPresentation parse_pcp(const std::string& text);
PcPresentation load_pcp(const std::string& path);
std::string serialize_pcp(const PcPresentation& pres);
/// FNV-1a of the serialized presentation, as 16 hex digits.
std::string presentation_hash(const PcPresentation& pres);

/// Ids accepted by builtin(): names, Hall-Senior labels and "A x B" products.
std::vector<std::string> builtin_ids();
std::optional<ReferenceValues> reference_values(const std::string& id);

/// Looks up an id, builds its presentation and refuses it unless the computed
/// fingerprint matches the expected one.
CatalogEntry builtin(const std::string& id);
/// A user-supplied presentation, checked against a known fingerprint if the id has one.
CatalogEntry from_pcp_file(const std::string& id, const std::string& path);
GroupPtr load_group(const std::string& id_or_path);

PcPresentation cyclic_presentation(Prime p, unsigned k);
enum class Metacyclic { dihedral, quaternion, semidihedral };
PcPresentation metacyclic_presentation(Metacyclic kind, unsigned n);
PcPresentation w2_presentation();
PcPresentation su3_4_sylow_presentation();
PcPresentation sz8_sylow_presentation();

}  // namespace pcoh

#include "pcoh/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <sstream>

namespace pcoh {

namespace {


std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Multiplication in GF(2^k) modulo the given polynomial (bit k set).
unsigned gf_mul(unsigned a, unsigned b, unsigned k, unsigned poly) {
  unsigned r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << k)) a ^= poly;
  }
  return r;
}

unsigned gf_pow(unsigned a, unsigned e, unsigned k, unsigned poly) {
  unsigned r = 1;
  while (e--) r = gf_mul(r, a, k, poly);
  return r;
}

// Builds a group from a list of pair elements with the given product; the first
// pair must be the identity.
PcPresentation pair_group(const std::vector<std::pair<unsigned, unsigned>>& elems,
                          const std::function<std::pair<unsigned, unsigned>(std::pair<unsigned, unsigned>,
                                                                            std::pair<unsigned, unsigned>)>& op,
                          const std::string& name) {
  std::map<std::pair<unsigned, unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  std::vector<std::size_t> table(elems.size() * elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) table[a * elems.size() + b] = index.at(op(elems[a], elems[b]));
  auto pres = from_cayley_table(2, table, name).first->presentation();
  pres.name = name;
  return pres;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {
      {"2#1", "Z2"},     {"4#2", "Z4"},     {"8#3", "Z8"},     {"8#4", "D8"},      {"8#5", "Q8"},
      {"16#5", "Z16"},   {"16#12", "D16"},  {"16#13", "SD16"}, {"16#14", "Q16"},   {"32#18", "W2"},
      {"32#49", "D32"},  {"32#50", "SD32"}, {"32#51", "Q32"},  {"64#11", "Z64"},   {"64#153", "Sz8"},
      {"64#187", "SU3_4"}, {"64#267", "Q64"},
  };
  return a;
}

const std::map<std::string, Fingerprint>& known_fingerprints() {
  static const std::map<std::string, Fingerprint> f = [] {
    std::map<std::string, Fingerprint> m;
    for (unsigned k = 1; k <= 6; ++k) m["Z" + std::to_string(1u << k)] = {std::size_t{1} << k, 1, 1, true};
    for (unsigned k = 1; k <= 4; ++k) m["Z2^" + std::to_string(k)] = {std::size_t{1} << k, k, k, true};
    for (unsigned n = 3; n <= 5; ++n) m["D" + std::to_string(1u << n)] = {std::size_t{1} << n, 1, 2, false};
    for (unsigned n = 3; n <= 6; ++n) m["Q" + std::to_string(1u << n)] = {std::size_t{1} << n, 1, 1, true};
    m["SD16"] = {16, 1, 2, false};
    m["SD32"] = {32, 1, 2, false};
    m["W2"] = {32, 3, 3, true};
    m["SU3_4"] = {64, 2, 2, true};
    m["Sz8"] = {64, 3, 3, true};
    m["64#108"] = {64, 2, 3, false};
    return m;
  }();
  return f;
}

std::string canonical_id(const std::string& id) {
  const auto it = aliases().find(id);
  return it == aliases().end() ? id : it->second;
}

std::vector<std::string> split_product(const std::string& id) {
  std::string s = id;
  for (std::size_t pos; (pos = s.find("\xc3\x97")) != std::string::npos;) s.replace(pos, 2, "x");
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, 'x');) parts.push_back(trim(part));
  return parts;
}

PcPresentation named_presentation(const std::string& canonical) {
  if (canonical == "W2") return w2_presentation();
  if (canonical == "SU3_4") return su3_4_sylow_presentation();
  if (canonical == "Sz8") return sz8_sylow_presentation();
  auto number = [&](std::size_t from) { return static_cast<unsigned>(std::stoul(canonical.substr(from))); };
  auto log2 = [](unsigned v) {
    unsigned k = 0;
    while ((1u << k) < v) ++k;
    if ((1u << k) != v) throw CatalogError("order is not a power of 2");
    return k;
  };
  if (canonical.rfind("Z2^", 0) == 0) {
    auto pres = elementary_abelian_presentation(2, number(3));
    pres.name = canonical;
    return pres;
  }
  if (canonical.rfind("SD", 0) == 0) return metacyclic_presentation(Metacyclic::semidihedral, log2(number(2)));
  if (canonical[0] == 'Z') return cyclic_presentation(2, log2(number(1)));
  if (canonical[0] == 'D') return metacyclic_presentation(Metacyclic::dihedral, log2(number(1)));
  if (canonical[0] == 'Q') return metacyclic_presentation(Metacyclic::quaternion, log2(number(1)));
  throw CatalogError("unknown group id " + canonical);
}

}  // namespace

// ---------------------------------------------------------------- constructions

PcPresentation cyclic_presentation(Prime p, unsigned k) {
  auto pres = PcPresentation::trivial_relations(p, k);
  for (unsigned i = 0; i + 1 < k; ++i) pres.power[i][i + 1] = 1;
  std::size_t order = 1;
  for (unsigned i = 0; i < k; ++i) order *= p;
  pres.name = "Z" + std::to_string(order);
  return pres;
}

PcPresentation metacyclic_presentation(Metacyclic kind, unsigned n) {
  if (n < 3 || (kind == Metacyclic::semidihedral && n < 4)) throw CatalogError("metacyclic group too small");
  // g_1 = s, g_j = r^(2^(j-2)); s^{-1} r s = r^k with r of order 2^(n-1).
  const long mod = 1L << (n - 1);
  const long k = kind == Metacyclic::semidihedral ? (1L << (n - 2)) - 1 : mod - 1;
  auto pres = PcPresentation::trivial_relations(2, n);
  for (unsigned j = 1; j + 1 < n; ++j) pres.power[j][j + 1] = 1;
  if (kind == Metacyclic::quaternion) pres.power[0][n - 1] = 1;
  for (unsigned j = 1; j < n; ++j) {
    const long m = 1L << (j - 1);
    long t = (m * (k - 1)) % mod;
    if (t < 0) t += mod;
    for (unsigned bit = 0; bit + 1 < n; ++bit) pres.comm[j][0][bit + 1] = (t >> bit) & 1;
  }
  const std::string prefix = kind == Metacyclic::dihedral ? "D" : kind == Metacyclic::quaternion ? "Q" : "SD";
  pres.name = prefix + std::to_string(1u << n);
  return pres;
}

PcPresentation w2_presentation() {
  // a, b, a^2, b^2, [b, a]
  auto pres = PcPresentation::trivial_relations(2, 5);
  pres.power[0][2] = 1;
  pres.power[1][3] = 1;
  pres.comm[1][0][4] = 1;
  pres.name = "W2";
  return pres;
}

PcPresentation su3_4_sylow_presentation() {
  // Pairs (a, b) over GF(16) with b + b^4 = a^5, product (a,b)(c,d) = (a+c, b+d+a^4 c).
  constexpr unsigned k = 4, poly = 0x13;
  std::vector<std::pair<unsigned, unsigned>> elems;
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b)
      if ((b ^ gf_pow(b, 4, k, poly)) == gf_pow(a, 5, k, poly)) elems.emplace_back(a, b);
  auto op = [&](std::pair<unsigned, unsigned> x, std::pair<unsigned, unsigned> y) {
    return std::pair<unsigned, unsigned>{x.first ^ y.first, x.second ^ y.second ^ gf_mul(gf_pow(x.first, 4, k, poly), y.first, k, poly)};
  };
  return pair_group(elems, op, "SU3_4");
}

PcPresentation sz8_sylow_presentation() {
  // Pairs (a, b) over GF(8), product (a,b)(c,d) = (a+c, b+d+a c^4).
  constexpr unsigned k = 3, poly = 0xb;
  std::vector<std::pair<unsigned, unsigned>> elems;
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) elems.emplace_back(a, b);
  auto op = [&](std::pair<unsigned, unsigned> x, std::pair<unsigned, unsigned> y) {
    return std::pair<unsigned, unsigned>{x.first ^ y.first, x.second ^ y.second ^ gf_mul(x.first, gf_pow(y.first, 4, k, poly), k, poly)};
  };
  return pair_group(elems, op, "Sz8");
}

// ---------------------------------------------------------------- .pcp

PcPresentation parse_pcp(const std::string& text) {
  std::istringstream in(text);
  std::optional<Prime> p;
  std::optional<unsigned> n;
  PcPresentation pres;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<bool>> comm_seen;
  std::vector<bool> pow_seen;

  auto parse_word = [&](const std::string& w) {
    std::vector<unsigned> exps(*n, 0);
    std::istringstream ws(w);
    std::string tok;
    int last = -1;
    bool any = false;
    while (ws >> tok) {
      if (tok == "1") {
        if (any) throw PcpParseError(lineno, "'1' must be the whole word");
        any = true;
        last = static_cast<int>(*n);
        continue;
      }
      if (tok.size() < 2 || tok[0] != 'g') throw PcpParseError(lineno, "bad factor '" + tok + "'");
      const auto caret = tok.find('^');
      unsigned gen = 0, e = 1;
      try {
        std::size_t used = 0;
        gen = static_cast<unsigned>(std::stoul(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), &used));
        if (used != (caret == std::string::npos ? tok.size() - 1 : caret - 1)) throw std::invalid_argument("");
        if (caret != std::string::npos) {
          e = static_cast<unsigned>(std::stoul(tok.substr(caret + 1), &used));
          if (used != tok.size() - caret - 1) throw std::invalid_argument("");
        }
      } catch (const std::logic_error&) {
        throw PcpParseError(lineno, "bad factor '" + tok + "'");
      }
      if (gen < 1 || gen > *n) throw PcpParseError(lineno, "generator g" + std::to_string(gen) + " out of range");
      if (e < 1 || e >= *p) throw PcpParseError(lineno, "exponent must be in 1.." + std::to_string(*p - 1));
      if (static_cast<int>(gen) <= last) throw PcpParseError(lineno, "word is not in normal form");
      last = static_cast<int>(gen);
      exps[gen - 1] = e;
      any = true;
    }
    if (!any) throw PcpParseError(lineno, "empty word (write 1)");
    return exps;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "p") {
      unsigned v = 0;
      if (!(ls >> v) || p) throw PcpParseError(lineno, "bad or repeated 'p' line");
      if (!is_prime(v)) throw PcpParseError(lineno, std::to_string(v) + " is not prime");
      p = v;
    } else if (key == "gens") {
      unsigned v = 0;
      if (!(ls >> v) || n || !p) throw PcpParseError(lineno, "'gens' must follow 'p' once");
      n = v;
      pres = PcPresentation::trivial_relations(*p, v);
      pow_seen.assign(v, false);
      comm_seen.assign(v, std::vector<bool>(v, false));
    } else if (key == "pow" || key == "comm") {
      if (!n) throw PcpParseError(lineno, "relation before 'gens'");
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw PcpParseError(lineno, "missing '='");
      std::istringstream lhs(line.substr(0, eq));
      std::string dummy;
      lhs >> dummy;
      unsigned a = 0, b = 0;
      if (key == "pow") {
        if (!(lhs >> a) || a < 1 || a > *n) throw PcpParseError(lineno, "bad generator index");
        if (pow_seen[a - 1]) throw PcpParseError(lineno, "duplicate power relation");
        pow_seen[a - 1] = true;
        pres.power[a - 1] = parse_word(line.substr(eq + 1));
      } else {
        if (!(lhs >> a >> b) || b < 1 || a > *n) throw PcpParseError(lineno, "bad generator indices");
        if (a <= b) throw PcpParseError(lineno, "comm j i requires j > i");
        if (comm_seen[a - 1][b - 1]) throw PcpParseError(lineno, "duplicate commutator relation");
        comm_seen[a - 1][b - 1] = true;
        pres.comm[a - 1][b - 1] = parse_word(line.substr(eq + 1));
      }
      if (std::string extra; lhs >> extra) throw PcpParseError(lineno, "unexpected '" + extra + "'");
    } else {
      throw PcpParseError(lineno, "unknown directive '" + key + "'");
    }
  }
  if (!p || !n) throw PcpParseError(lineno, "missing 'p' or 'gens' header");
  try {
    PGroup check(pres);
  } catch (const GroupError& e) {
    throw PcpParseError(lineno, e.what());
  }
  return pres;
}

PcPresentation load_pcp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CatalogError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto pres = parse_pcp(ss.str());
  pres.name = std::filesystem::path(path).stem().string();
  return pres;
}

std::string serialize_pcp(const PcPresentation& pres) {
  auto word = [&](const std::vector<unsigned>& w) {
    std::string out;
    for (unsigned i = 0; i < pres.n; ++i) {
      if (!w[i]) continue;
      if (!out.empty()) out += ' ';
      out += "g" + std::to_string(i + 1);
      if (w[i] != 1) out += "^" + std::to_string(w[i]);
    }
    return out.empty() ? std::string("1") : out;
  };
  std::ostringstream out;
  if (!pres.name.empty()) out << "# " << pres.name << "\n";
  out << "p " << pres.p << "\n" << "gens " << pres.n << "\n";
  for (unsigned i = 0; i < pres.n; ++i)
    if (std::any_of(pres.power[i].begin(), pres.power[i].end(), [](unsigned v) { return v != 0; }))
      out << "pow " << i + 1 << " = " << word(pres.power[i]) << "\n";
  for (unsigned j = 0; j < pres.n; ++j)
    for (unsigned i = 0; i < j; ++i)
      if (std::any_of(pres.comm[j][i].begin(), pres.comm[j][i].end(), [](unsigned v) { return v != 0; }))
        out << "comm " << j + 1 << " " << i + 1 << " = " << word(pres.comm[j][i]) << "\n";
  return out.str();
}

std::string presentation_hash(const PcPresentation& pres) {
  PcPresentation unnamed = pres;
  unnamed.name.clear();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_pcp(unnamed)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------- catalog

Fingerprint compute_fingerprint(const PGroup& g) {
  return {g.order(), omega1_center(g).rank(), p_rank(g), is_p_central(g)};
}

std::vector<std::string> builtin_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fp] : known_fingerprints())
    if (id != "64#108") ids.push_back(id);
  for (const auto& [alias, target] : aliases()) ids.push_back(alias);
  return ids;
}

std::optional<ReferenceValues> reference_values(const std::string& id) {
  static const std::map<std::string, ReferenceValues> table = [] {
    std::map<std::string, ReferenceValues> m;
    auto central = [](std::vector<unsigned> type, int d0, int d1) {
      ReferenceValues v;
      v.type = std::move(type);
      v.d0 = d0;
      v.d1 = d1;
      v.e = d0;
      v.e_prime = d0;
      v.h = d1 - d0;
      return v;
    };
    m["Z2"] = central({1}, 0, 0);
    m["Z4"] = central({2}, 1, 2);
    m["Z8"] = central({2}, 1, 2);
    m["Z16"] = central({2}, 1, 2);
    m["Z64"] = central({2}, 1, 2);
    m["Q8"] = central({4}, 3, 5);
    m["Q16"] = central({4}, 3, 5);
    m["Q32"] = central({4}, 3, 5);
    m["Q64"] = central({4}, 3, 5);
    m["W2"] = central({2, 2, 2}, 3, 4);
    m["Sz8"] = central({4, 4, 4}, 9, 11);
    m["SU3_4"] = central({8, 8}, 14, 18);
    auto noncentral = [](std::vector<unsigned> type, unsigned depth, unsigned rank, int e, int ep, int d0) {
      ReferenceValues v;
      v.type = std::move(type);
      v.depth = depth;
      v.rank = rank;
      v.e = e;
      v.e_prime = ep;
      v.d0 = d0;
      return v;
    };
    m["D8"] = noncentral({2}, 2, 2, 1, -1, 0);
    m["D16"] = noncentral({2}, 1, 2, 1, -1, 0);
    m["SD16"] = noncentral({4}, 1, 2, 3, 2, 2);
    m["D32"] = noncentral({2}, 2, 2, 1, -1, 0);
    m["SD32"] = noncentral({4}, 1, 2, 3, 2, 2);
    ReferenceValues g108;
    g108.type = {8, 2};
    g108.e = 8;
    g108.e_prime = 7;
    g108.d0 = 7;
    m["64#108"] = g108;
    return m;
  }();
  const auto it = table.find(canonical_id(id));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

CatalogEntry builtin(const std::string& id) {
  const auto parts = split_product(id);
  if (parts.empty() || std::any_of(parts.begin(), parts.end(), [](const std::string& s) { return s.empty(); }))
    throw CatalogError("malformed group id '" + id + "'");
  CatalogEntry entry;
  entry.id = id;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto canonical = canonical_id(parts[i]);
    const auto fp = known_fingerprints().find(canonical);
    if (fp == known_fingerprints().end() || canonical == "64#108") throw CatalogError("unknown group id '" + parts[i] + "'");
    const auto pres = named_presentation(canonical);
    if (i == 0) {
      entry.presentation = pres;
      entry.expected = fp->second;
    } else {
      entry.presentation = direct_product(entry.presentation, pres);
      entry.expected.order *= fp->second.order;
      entry.expected.center_rank += fp->second.center_rank;
      entry.expected.p_rank += fp->second.p_rank;
      entry.expected.p_central = entry.expected.p_central && fp->second.p_central;
    }
  }
  entry.presentation.name = parts.size() == 1 ? canonical_id(parts[0]) : id;
  if (parts.size() == 1) entry.reference = reference_values(parts[0]);
  const PGroup g(entry.presentation);
  const auto got = compute_fingerprint(g);
  if (!(got == entry.expected)) throw CatalogError("built-in '" + id + "' failed its fingerprint check");
  return entry;
}

CatalogEntry from_pcp_file(const std::string& id, const std::string& path) {
  CatalogEntry entry;
  entry.id = id;
  entry.presentation = load_pcp(path);
  const PGroup g(entry.presentation);
  const auto got = compute_fingerprint(g);
  const auto known = known_fingerprints().find(canonical_id(id));
  if (known != known_fingerprints().end()) {
    if (!(got == known->second)) throw CatalogError("presentation in " + path + " does not match the fingerprint of " + id);
    entry.reference = reference_values(id);
  }
  entry.expected = got;
  entry.presentation.name = id;
  return entry;
}

GroupPtr load_group(const std::string& id_or_path) {
  if (std::filesystem::exists(id_or_path) && std::filesystem::is_regular_file(id_or_path)) {
    auto pres = load_pcp(id_or_path);
    return make_group(std::move(pres));
  }
  return make_group(builtin(id_or_path).presentation);
}

}  // namespace pcoh

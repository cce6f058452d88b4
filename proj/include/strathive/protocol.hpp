#ifndef STRATHIVE_PROTOCOL_HPP
#define STRATHIVE_PROTOCOL_HPP

// Protocols (complete search strategies), their command-line syntax, and the
// two configuration spaces the tuner searches: the global space over whole
// CEFs drawn from a collection, and the fine space over the arguments of a
// fixed protocol's CEFs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strathive/weights.hpp"

namespace strathive {

enum class TermOrdering { none, kbo };
enum class LiteralSelection { none, select_first_negative, select_largest_negative };

struct WeightedCef {
  int frequency = 1;
  Cef cef;

  friend bool operator==(const WeightedCef&, const WeightedCef&) = default;
};

struct Protocol {
  TermOrdering ordering = TermOrdering::none;
  LiteralSelection literal_selection = LiteralSelection::none;
  std::vector<WeightedCef> cefs;

  friend bool operator==(const Protocol&, const Protocol&) = default;
};

// `-t{KBO|NONE} -W{none|SelectFirstNeg|SelectLargestNeg} -H'(<freq>*<CEF>,...)'`.
// Throws std::invalid_argument.
Protocol parse_protocol(std::string_view text);
std::string render_protocol(const Protocol& p);
// Stable 16-hex-digit digest of the canonical text.
std::string protocol_digest(const Protocol& p);
std::string text_digest(std::string_view text);

std::string_view ordering_name(TermOrdering o);
std::string_view selection_name(LiteralSelection s);

// Pre-designed value sets per argument type, plus the CEF frequency ladder.
struct ArgDomains {
  std::vector<Rational> symbol_weight;
  std::vector<Rational> multiplier;
  std::vector<Rational> cost;
  std::vector<Rational> signed_weight;
  std::vector<int> frequency;

  static ArgDomains defaults();
  // JSON object with keys symbol_weight, multiplier, cost, signed_weight,
  // frequency; values are arrays of number strings or integers.
  static ArgDomains from_json(std::string_view json);
  std::string to_json() const;

  const std::vector<Rational>& values(ArgType t) const;
};

struct ParamDef {
  std::string name;
  std::vector<std::string> domain;
  // Ordinal parameters only move to adjacent domain positions in local search.
  bool ordinal = false;
};

// One value index per parameter, aligned with ConfigSpace::params().
struct Config {
  std::vector<std::size_t> choice;

  friend bool operator==(const Config&, const Config&) = default;
};

enum class SpaceKind { global, fine };

class ConfigSpace {
 public:
  SpaceKind kind() const { return kind_; }
  const std::vector<ParamDef>& params() const { return params_; }
  std::size_t index_of(std::string_view name) const;
  const std::string& value(const Config& c, std::string_view name) const;

  bool contains(const Config& c) const;
  // Total: every member config decodes to a well-formed protocol.
  Protocol decode(const Config& c) const;
  std::string digest(const Config& c) const;
  std::map<std::string, std::string> assignment(const Config& c) const;

  // Product of domain sizes; nullopt when it overflows 64 bits.
  std::optional<std::uint64_t> size() const;
  double log10_size() const;

  // Global spaces only.
  const std::vector<Cef>& collection() const { return collection_; }
  int c_cef() const { return c_cef_; }
  // Fine spaces only.
  const Protocol& frozen() const { return frozen_; }

 private:
  friend ConfigSpace global_space(const std::vector<Cef>&, int, const ArgDomains&, const std::vector<int>&);
  friend ConfigSpace fine_space(const Protocol&, const ArgDomains&);

  SpaceKind kind_ = SpaceKind::global;
  std::vector<ParamDef> params_;
  std::vector<Cef> collection_;
  int c_cef_ = 0;
  std::vector<int> frequencies_;
  Protocol frozen_;
};

inline constexpr std::string_view kSlotOff = "off";

// Params: ordering, literal_selection and, per slot i in 1..c_cef,
// slot<i>_cef over C (plus "off" for i >= 2) and slot<i>_freq. Extra
// frequencies are merged into the frequency ladder. Throws on empty C.
ConfigSpace global_space(const std::vector<Cef>& collection, int c_cef,
                         const ArgDomains& domains = ArgDomains::defaults(),
                         const std::vector<int>& extra_frequencies = {});

// Params: slot<i>_priority for every CEF slot and slot<i>_arg<j> for every
// weight-function argument. Each argument domain is its type's value set
// plus the value theta1 already uses.
ConfigSpace fine_space(const Protocol& theta1, const ArgDomains& domains = ArgDomains::defaults());

// The fine configuration reproducing the space's frozen protocol.
Config lift_to_fine(const ConfigSpace& fine);

struct GlobalEmbedding {
  std::vector<Cef> collection;  // input collection plus appended novel CEFs
  std::size_t added = 0;
  ConfigSpace space;
  Config config;
};

// Global configuration decoding to p. CEFs of p missing from the collection
// are appended. Throws when p has more CEFs than c_cef.
GlobalEmbedding embed_in_global(const Protocol& p, std::vector<Cef> collection, int c_cef,
                                const ArgDomains& domains = ArgDomains::defaults());
GlobalEmbedding project_to_global(const ConfigSpace& fine, const Config& theta,
                                  std::vector<Cef> collection, int c_cef,
                                  const ArgDomains& domains = ArgDomains::defaults());

}  // namespace strathive

#endif  // STRATHIVE_PROTOCOL_HPP

#include "strathive/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace strathive {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas at parenthesis depth zero.
std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced parentheses in heuristic");
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses in heuristic");
  out.push_back(trim(s.substr(start)));
  return out;
}

int parse_frequency(std::string_view text) {
  text = trim(text);
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("malformed frequency '" + std::string(text) + "'");
  }
  if (text.size() > 6) throw std::invalid_argument("frequency too large '" + std::string(text) + "'");
  const int f = std::stoi(std::string(text));
  if (f < 1) throw std::invalid_argument("frequency must be at least 1");
  return f;
}

constexpr TermOrdering kOrderings[] = {TermOrdering::none, TermOrdering::kbo};
constexpr LiteralSelection kSelections[] = {LiteralSelection::none, LiteralSelection::select_first_negative,
                                            LiteralSelection::select_largest_negative};

template <typename T, std::size_t N>
std::size_t position(const T (&values)[N], T v) {
  return static_cast<std::size_t>(std::find(std::begin(values), std::end(values), v) - std::begin(values));
}

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::string_view ordering_name(TermOrdering o) { return o == TermOrdering::kbo ? "KBO" : "NONE"; }

std::string_view selection_name(LiteralSelection s) {
  switch (s) {
    case LiteralSelection::none: return "none";
    case LiteralSelection::select_first_negative: return "SelectFirstNeg";
    case LiteralSelection::select_largest_negative: return "SelectLargestNeg";
  }
  return "none";
}

Protocol parse_protocol(std::string_view text) {
  text = trim(text);
  Protocol p;

  auto take_option = [&](char flag) -> std::string_view {
    text = trim(text);
    if (text.size() < 2 || text[0] != '-' || text[1] != flag) {
      throw std::invalid_argument(std::string("expected option -") + flag);
    }
    text.remove_prefix(2);
    std::size_t end = 0;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view value = text.substr(0, end);
    text.remove_prefix(end);
    return value;
  };

  const std::string_view ordering = take_option('t');
  if (ordering == "KBO") p.ordering = TermOrdering::kbo;
  else if (ordering == "NONE") p.ordering = TermOrdering::none;
  else throw std::invalid_argument("unknown term ordering '" + std::string(ordering) + "'");

  const std::string_view selection = take_option('W');
  bool known = false;
  for (LiteralSelection s : kSelections) {
    if (selection_name(s) == selection) {
      p.literal_selection = s;
      known = true;
    }
  }
  if (!known) throw std::invalid_argument("unknown literal selection '" + std::string(selection) + "'");

  text = trim(text);
  if (text.substr(0, 3) != "-H'" || text.size() < 4 || text.back() != '\'') {
    throw std::invalid_argument("expected -H'(...)'");
  }
  std::string_view heuristic = trim(text.substr(3, text.size() - 4));
  if (heuristic.size() < 2 || heuristic.front() != '(' || heuristic.back() != ')') {
    throw std::invalid_argument("heuristic must be parenthesized");
  }
  heuristic = heuristic.substr(1, heuristic.size() - 2);
  for (std::string_view item : split_top(heuristic)) {
    const auto star = item.find('*');
    if (star == std::string_view::npos) {
      throw std::invalid_argument("expected <freq>*<CEF>, found '" + std::string(item) + "'");
    }
    WeightedCef wc;
    wc.frequency = parse_frequency(item.substr(0, star));
    wc.cef = parse_cef(item.substr(star + 1));
    p.cefs.push_back(std::move(wc));
  }
  return p;
}

std::string render_protocol(const Protocol& p) {
  std::string out = "-t";
  out += ordering_name(p.ordering);
  out += " -W";
  out += selection_name(p.literal_selection);
  out += " -H'(";
  for (std::size_t i = 0; i < p.cefs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p.cefs[i].frequency);
    out += '*';
    out += render_cef(p.cefs[i].cef);
  }
  out += ")'";
  return out;
}

std::string text_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string protocol_digest(const Protocol& p) { return text_digest(render_protocol(p)); }

// ---------------------------------------------------------------------------
// Domains

ArgDomains ArgDomains::defaults() {
  ArgDomains d;
  d.symbol_weight = {Rational(1, 2), Rational(1), Rational(2), Rational(3), Rational(5)};
  d.multiplier = {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
  d.cost = {Rational(0), Rational(1), Rational(2), Rational(5)};
  d.signed_weight = {Rational(-2), Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  d.frequency = {1, 2, 4, 6, 8, 13, 16, 20};
  return d;
}

ArgDomains ArgDomains::from_json(std::string_view json) {
  const auto doc = nlohmann::json::parse(json);
  ArgDomains d = defaults();
  auto read = [&](const char* key, std::vector<Rational>& out) {
    if (!doc.contains(key)) return;
    out.clear();
    for (const auto& v : doc.at(key)) {
      out.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<std::int64_t>()));
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty domain '") + key + "'");
    out = sorted_unique(std::move(out));
  };
  read("symbol_weight", d.symbol_weight);
  read("multiplier", d.multiplier);
  read("cost", d.cost);
  read("signed_weight", d.signed_weight);
  if (doc.contains("frequency")) {
    d.frequency = doc.at("frequency").get<std::vector<int>>();
    std::sort(d.frequency.begin(), d.frequency.end());
    d.frequency.erase(std::unique(d.frequency.begin(), d.frequency.end()), d.frequency.end());
    if (d.frequency.empty() || d.frequency.front() < 1) {
      throw std::invalid_argument("frequency domain must hold positive integers");
    }
  }
  return d;
}

std::string ArgDomains::to_json() const {
  nlohmann::ordered_json doc;
  auto write = [](const std::vector<Rational>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Rational& q : v) arr.push_back(format_rational(q));
    return arr;
  };
  doc["symbol_weight"] = write(symbol_weight);
  doc["multiplier"] = write(multiplier);
  doc["cost"] = write(cost);
  doc["signed_weight"] = write(signed_weight);
  doc["frequency"] = frequency;
  return doc.dump(2);
}

const std::vector<Rational>& ArgDomains::values(ArgType t) const {
  switch (t) {
    case ArgType::symbol_weight: return symbol_weight;
    case ArgType::multiplier: return multiplier;
    case ArgType::cost: return cost;
    case ArgType::signed_weight: return signed_weight;
    case ArgType::doc_source: break;
  }
  throw std::invalid_argument("doc_source has no numeric domain");
}

// ---------------------------------------------------------------------------
// Spaces

std::size_t ConfigSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return i;
  }
  throw std::out_of_range("no parameter '" + std::string(name) + "'");
}

const std::string& ConfigSpace::value(const Config& c, std::string_view name) const {
  const std::size_t i = index_of(name);
  return params_[i].domain.at(c.choice.at(i));
}

bool ConfigSpace::contains(const Config& c) const {
  if (c.choice.size() != params_.size()) return false;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (c.choice[i] >= params_[i].domain.size()) return false;
  }
  return true;
}

Protocol ConfigSpace::decode(const Config& c) const {
  if (!contains(c)) throw std::invalid_argument("configuration does not belong to the space");
  if (kind_ == SpaceKind::global) {
    Protocol p;
    p.ordering = kOrderings[c.choice[0]];
    p.literal_selection = kSelections[c.choice[1]];
    for (int slot = 0; slot < c_cef_; ++slot) {
      const std::size_t cef = c.choice[2 + 2 * static_cast<std::size_t>(slot)];
      const std::size_t freq = c.choice[3 + 2 * static_cast<std::size_t>(slot)];
      if (cef >= collection_.size()) continue;  // off
      p.cefs.push_back(WeightedCef{frequencies_[freq], collection_[cef]});
    }
    return p;
  }
  Protocol p = frozen_;
  std::size_t k = 0;
  for (WeightedCef& wc : p.cefs) {
    wc.cef.priority = kAllPriorities[c.choice[k++]];
    const auto types = arg_types(wc.cef.weight.kind());
    std::vector<ArgValue> args;
    for (ArgType t : types) {
      const std::string& text = params_[k].domain[c.choice[k]];
      args.push_back(parse_arg(text, t));
      ++k;
    }
    wc.cef.weight = WeightFn(wc.cef.weight.kind(), std::move(args));
  }
  return p;
}

std::map<std::string, std::string> ConfigSpace::assignment(const Config& c) const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < params_.size(); ++i) out[params_[i].name] = params_[i].domain.at(c.choice.at(i));
  return out;
}

std::string ConfigSpace::digest(const Config& c) const {
  std::string text;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    text += params_[i].name;
    text += '=';
    text += params_[i].domain.at(c.choice.at(i));
    text += ';';
  }
  return text_digest(text);
}

std::optional<std::uint64_t> ConfigSpace::size() const {
  std::uint64_t n = 1;
  for (const ParamDef& p : params_) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(p.domain.size()), &n)) return std::nullopt;
  }
  return n;
}

double ConfigSpace::log10_size() const {
  double s = 0.0;
  for (const ParamDef& p : params_) s += std::log10(static_cast<double>(p.domain.size()));
  return s;
}

ConfigSpace global_space(const std::vector<Cef>& collection, int c_cef, const ArgDomains& domains,
                         const std::vector<int>& extra_frequencies) {
  if (collection.empty()) throw std::invalid_argument("global space needs a nonempty CEF collection");
  if (c_cef < 1) throw std::invalid_argument("c_cef must be positive");

  ConfigSpace s;
  s.kind_ = SpaceKind::global;
  s.c_cef_ = c_cef;
  for (const Cef& cef : collection) {
    if (std::find(s.collection_.begin(), s.collection_.end(), cef) == s.collection_.end()) {
      s.collection_.push_back(cef);
    }
  }
  std::set<int> freqs(domains.frequency.begin(), domains.frequency.end());
  for (int f : extra_frequencies) {
    if (f < 1) throw std::invalid_argument("frequency must be at least 1");
    freqs.insert(f);
  }
  s.frequencies_.assign(freqs.begin(), freqs.end());

  ParamDef ordering{"ordering", {}, false};
  for (TermOrdering o : kOrderings) ordering.domain.emplace_back(ordering_name(o));
  ParamDef selection{"literal_selection", {}, false};
  for (LiteralSelection l : kSelections) selection.domain.emplace_back(selection_name(l));
  s.params_.push_back(std::move(ordering));
  s.params_.push_back(std::move(selection));

  std::vector<std::string> cef_texts;
  for (const Cef& cef : s.collection_) cef_texts.push_back(render_cef(cef));
  std::vector<std::string> freq_texts;
  for (int f : s.frequencies_) freq_texts.push_back(std::to_string(f));

  for (int slot = 1; slot <= c_cef; ++slot) {
    ParamDef cef{"slot" + std::to_string(slot) + "_cef", cef_texts, false};
    if (slot > 1) cef.domain.emplace_back(kSlotOff);
    s.params_.push_back(std::move(cef));
    s.params_.push_back(ParamDef{"slot" + std::to_string(slot) + "_freq", freq_texts, true});
  }
  return s;
}

ConfigSpace fine_space(const Protocol& theta1, const ArgDomains& domains) {
  if (theta1.cefs.empty()) throw std::invalid_argument("protocol has no CEFs");
  ConfigSpace s;
  s.kind_ = SpaceKind::fine;
  s.frozen_ = theta1;
  for (std::size_t i = 0; i < theta1.cefs.size(); ++i) {
    const std::string slot = "slot" + std::to_string(i + 1);
    ParamDef prio{slot + "_priority", {}, false};
    for (PriorityFn p : kAllPriorities) prio.domain.emplace_back(priority_name(p));
    s.params_.push_back(std::move(prio));

    const WeightFn& wf = theta1.cefs[i].cef.weight;
    const auto types = arg_types(wf.kind());
    for (std::size_t j = 0; j < types.size(); ++j) {
      ParamDef arg{slot + "_arg" + std::to_string(j + 1), {}, false};
      if (types[j] == ArgType::doc_source) {
        arg.domain = {"ax", "pro"};
      } else {
        std::vector<Rational> values = domains.values(types[j]);
        values.push_back(std::get<Rational>(wf.args()[j]));
        for (const Rational& q : sorted_unique(std::move(values))) arg.domain.push_back(format_rational(q));
      }
      s.params_.push_back(std::move(arg));
    }
  }
  return s;
}

Config lift_to_fine(const ConfigSpace& fine) {
  if (fine.kind() != SpaceKind::fine) throw std::invalid_argument("lift_to_fine needs a fine space");
  Config c;
  const auto& params = fine.params();
  std::size_t k = 0;
  auto pick = [&](const std::string& text) {
    const auto& dom = params[k].domain;
    c.choice.push_back(static_cast<std::size_t>(std::find(dom.begin(), dom.end(), text) - dom.begin()));
    ++k;
  };
  for (const WeightedCef& wc : fine.frozen().cefs) {
    pick(std::string(priority_name(wc.cef.priority)));
    for (const ArgValue& a : wc.cef.weight.args()) pick(render_arg(a));
  }
  return c;
}

GlobalEmbedding embed_in_global(const Protocol& p, std::vector<Cef> collection, int c_cef,
                                const ArgDomains& domains) {
  if (p.cefs.empty()) throw std::invalid_argument("protocol has no CEFs");
  if (static_cast<int>(p.cefs.size()) > c_cef) {
    throw std::invalid_argument("protocol has " + std::to_string(p.cefs.size()) +
                                " CEFs, more than c_cef=" + std::to_string(c_cef));
  }
  GlobalEmbedding e;
  std::vector<int> freqs;
  for (const WeightedCef& wc : p.cefs) {
    freqs.push_back(wc.frequency);
    if (std::find(collection.begin(), collection.end(), wc.cef) == collection.end()) {
      collection.push_back(wc.cef);
      ++e.added;
    }
  }
  e.space = global_space(collection, c_cef, domains, freqs);
  e.collection = e.space.collection();

  const auto& params = e.space.params();
  e.config.choice.assign(params.size(), 0);
  e.config.choice[0] = position(kOrderings, p.ordering);
  e.config.choice[1] = position(kSelections, p.literal_selection);
  const auto& cefs = e.space.collection();
  for (int slot = 0; slot < c_cef; ++slot) {
    const std::size_t ci = 2 + 2 * static_cast<std::size_t>(slot);
    if (static_cast<std::size_t>(slot) < p.cefs.size()) {
      const WeightedCef& wc = p.cefs[static_cast<std::size_t>(slot)];
      e.config.choice[ci] = static_cast<std::size_t>(std::find(cefs.begin(), cefs.end(), wc.cef) - cefs.begin());
      const auto& fdom = params[ci + 1].domain;
      e.config.choice[ci + 1] = static_cast<std::size_t>(
          std::find(fdom.begin(), fdom.end(), std::to_string(wc.frequency)) - fdom.begin());
    } else {
      e.config.choice[ci] = cefs.size();  // off
    }
  }
  return e;
}

GlobalEmbedding project_to_global(const ConfigSpace& fine, const Config& theta, std::vector<Cef> collection,
                                  int c_cef, const ArgDomains& domains) {
  return embed_in_global(fine.decode(theta), std::move(collection), c_cef, domains);
}

}  // namespace strathive

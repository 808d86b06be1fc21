#include "antpower/topology_io.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "antpower/errors.h"

namespace antpower {
namespace {

std::vector<std::string> SplitWords(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) words.emplace_back(line.substr(start, i - start));
  }
  return words;
}

std::string_view StripComment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool ParseDouble(const std::string& word, double* out) {
  const char* first = word.data();
  const char* last = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

double ParseNumber(const std::string& word, std::size_t line,
                   const char* what) {
  double value;
  if (!ParseDouble(word, &value) || !std::isfinite(value)) {
    throw ParseError(line, std::string("bad ") + what + " '" + word + "'");
  }
  return value;
}

double ParseCapacity(const std::string& word, std::size_t line) {
  if (word == "inf" || word == "unlimited") return kUnlimitedCapacity;
  double value = ParseNumber(word, line, "capacity");
  if (value <= 0.0) throw ParseError(line, "capacity must be positive");
  return value;
}

std::string FormatNumber(double value) {
  if (value == kUnlimitedCapacity) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    fn(line_no, text.substr(pos, end - pos));
    pos = end + 1;
  }
}

// Tokens of an SNDlib document with parentheses split out.
struct Token {
  std::string text;
  std::size_t line;
};

std::vector<Token> TokenizeSndlib(std::string_view text) {
  std::vector<Token> tokens;
  ForEachLine(text, [&tokens](std::size_t line_no, std::string_view line) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return;
    if (line[first] == '#' || line[first] == '?') return;
    std::string current;
    auto flush = [&]() {
      if (!current.empty()) tokens.push_back({std::move(current), line_no});
      current.clear();
    };
    for (char ch : line) {
      if (ch == '(' || ch == ')') {
        flush();
        tokens.push_back({std::string(1, ch), line_no});
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        current.push_back(ch);
      }
    }
    flush();
  });
  return tokens;
}

class SndlibReader {
 public:
  explicit SndlibReader(std::vector<Token> tokens)
      : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& Next(const char* expecting) {
    if (done()) {
      std::size_t line = tokens_.empty() ? 1 : tokens_.back().line;
      throw ParseError(line, std::string("unexpected end of file, expected ") +
                                 expecting);
    }
    return tokens_[pos_++];
  }

  const Token& Peek() const { return tokens_[pos_]; }

  void Expect(const char* text) {
    const Token& t = Next(text);
    if (t.text != text) {
      throw ParseError(t.line, std::string("expected '") + text +
                                   "', found '" + t.text + "'");
    }
  }

  // Skips a balanced parenthesized group; the '(' is already consumed.
  void SkipGroup() {
    int depth = 1;
    while (depth > 0) {
      const Token& t = Next("')'");
      if (t.text == "(") ++depth;
      if (t.text == ")") --depth;
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Network ParseTopology(std::string_view text, LogBase base) {
  Network net;
  ForEachLine(text, [&](std::size_t line_no, std::string_view raw) {
    auto words = SplitWords(StripComment(raw));
    if (words.empty()) return;
    const std::string& kw = words[0];
    try {
      if (kw == "node") {
        if (words.size() < 2 || words.size() > 3 ||
            (words.size() == 3 && words[2] != "edge")) {
          throw ParseError(line_no, "expected 'node <name> [edge]'");
        }
        net.AddNode(words[1], words.size() == 3);
      } else if (kw == "link" || kw == "arc") {
        if (words.size() < 5) {
          throw ParseError(line_no, "expected '" + kw +
                                        " <from> <to> <capacity> <a0> ...'");
        }
        auto from = net.FindNode(words[1]);
        auto to = net.FindNode(words[2]);
        if (!from) throw ParseError(line_no, "unknown node '" + words[1] + "'");
        if (!to) throw ParseError(line_no, "unknown node '" + words[2] + "'");
        double capacity = ParseCapacity(words[3], line_no);
        double a0 = ParseNumber(words[4], line_no, "coefficient");
        std::vector<double> poly;
        for (std::size_t k = 5; k < words.size(); ++k) {
          poly.push_back(ParseNumber(words[k], line_no, "coefficient"));
        }
        CostProfile profile(a0, std::move(poly), base);
        if (kw == "link") {
          net.AddBidirectionalLink(*from, *to, capacity, profile);
        } else {
          net.AddLink(*from, *to, capacity, std::move(profile));
        }
      } else if (kw == "reference-capacity") {
        if (words.size() != 2) {
          throw ParseError(line_no, "expected 'reference-capacity <mu>'");
        }
        net.set_reference_capacity(
            ParseNumber(words[1], line_no, "reference capacity"));
      } else {
        throw ParseError(line_no, "unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  });
  return net;
}

std::string WriteTopology(const Network& net) {
  std::ostringstream out;
  if (net.reference_capacity() != 1.0) {
    out << "reference-capacity " << FormatNumber(net.reference_capacity())
        << "\n";
  }
  for (const Node& n : net.nodes()) {
    out << "node " << n.name << (n.edge ? " edge" : "") << "\n";
  }
  std::set<LinkIndex> written;
  for (LinkIndex l = 0; l < net.num_links(); ++l) {
    if (written.count(l) > 0) continue;
    const Link& lk = net.link(l);
    auto reverse = net.FindLink(lk.to, lk.from);
    bool pair = reverse && written.count(*reverse) == 0 &&
                net.link(*reverse).capacity == lk.capacity &&
                net.link(*reverse).profile == lk.profile;
    out << (pair ? "link " : "arc ") << net.node(lk.from).name << " "
        << net.node(lk.to).name << " " << FormatNumber(lk.capacity);
    for (double a : lk.profile.Coefficients()) out << " " << FormatNumber(a);
    out << "\n";
    written.insert(l);
    if (pair) written.insert(*reverse);
  }
  return out.str();
}

std::vector<Flow> ParseTraffic(std::string_view text, const Network& net) {
  std::vector<Flow> flows;
  ForEachLine(text, [&](std::size_t line_no, std::string_view raw) {
    auto words = SplitWords(StripComment(raw));
    if (words.empty()) return;
    if (words[0] != "flow" || words.size() < 4 || words.size() > 5) {
      throw ParseError(line_no,
                       "expected 'flow <origin> <destination> <rate> "
                       "[active_from]'");
    }
    auto o = net.FindNode(words[1]);
    auto d = net.FindNode(words[2]);
    if (!o) throw ParseError(line_no, "unknown node '" + words[1] + "'");
    if (!d) throw ParseError(line_no, "unknown node '" + words[2] + "'");
    Flow f;
    f.id = static_cast<FlowIndex>(flows.size());
    f.origin = *o;
    f.destination = *d;
    f.rate = ParseNumber(words[3], line_no, "rate");
    if (words.size() == 5) {
      double start = ParseNumber(words[4], line_no, "activation iteration");
      if (start < 0 || start != std::floor(start)) {
        throw ParseError(line_no, "activation iteration must be a "
                                  "non-negative integer");
      }
      f.active_from = static_cast<int>(start);
    }
    try {
      ValidateFlow(net, f);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    flows.push_back(f);
  });
  return flows;
}

Network WithUniformLinks(const Network& net, const CostProfile& profile,
                         std::optional<double> capacity) {
  Network out(net.reference_capacity());
  for (const Node& n : net.nodes()) out.AddNode(n.name, n.edge);
  for (const Link& lk : net.links()) {
    out.AddLink(lk.from, lk.to, capacity.value_or(lk.capacity), profile);
  }
  return out;
}

SndlibInstance ImportSndlib(std::string_view text, const CostProfile& profile) {
  SndlibReader reader(TokenizeSndlib(text));
  SndlibInstance instance;
  Network& net = instance.network;
  bool saw_nodes = false;
  std::vector<std::pair<Token, Token>> link_ends;
  struct Demand {
    Token source, target;
    double value;
  };
  std::vector<Demand> demands;

  while (!reader.done()) {
    const Token section = reader.Next("section name");
    reader.Expect("(");
    if (section.text == "NODES") {
      saw_nodes = true;
      while (reader.Peek().text != ")") {
        const Token name = reader.Next("node name");
        if (net.FindNode(name.text)) {
          throw ParseError(name.line, "duplicate node '" + name.text + "'");
        }
        net.AddNode(name.text, /*edge=*/true);
        reader.Expect("(");
        reader.SkipGroup();
      }
      reader.Expect(")");
    } else if (section.text == "LINKS") {
      while (reader.Peek().text != ")") {
        reader.Next("link id");
        reader.Expect("(");
        Token a = reader.Next("link source");
        Token b = reader.Next("link target");
        reader.Expect(")");
        for (int k = 0; k < 4; ++k) {
          const Token& t = reader.Next("link attribute");
          double unused;
          if (!ParseDouble(t.text, &unused)) {
            throw ParseError(t.line, "bad link attribute '" + t.text + "'");
          }
        }
        reader.Expect("(");
        reader.SkipGroup();
        link_ends.emplace_back(std::move(a), std::move(b));
      }
      reader.Expect(")");
    } else if (section.text == "DEMANDS") {
      while (reader.Peek().text != ")") {
        reader.Next("demand id");
        reader.Expect("(");
        Token a = reader.Next("demand source");
        Token b = reader.Next("demand target");
        reader.Expect(")");
        reader.Next("routing unit");
        const Token& v = reader.Next("demand value");
        double value;
        if (!ParseDouble(v.text, &value) || !(value >= 0.0)) {
          throw ParseError(v.line, "bad demand value '" + v.text + "'");
        }
        reader.Next("max path length");
        demands.push_back({std::move(a), std::move(b), value});
      }
      reader.Expect(")");
    } else {
      reader.SkipGroup();
    }
  }
  if (!saw_nodes) throw ParseError(1, "missing NODES section");

  auto lookup = [&net](const Token& t, const char* role) {
    auto n = net.FindNode(t.text);
    if (!n) {
      throw ParseError(t.line, std::string(role) + " references unknown node '" +
                                   t.text + "'");
    }
    return *n;
  };
  for (const auto& [a, b] : link_ends) {
    NodeIndex u = lookup(a, "link");
    NodeIndex v = lookup(b, "link");
    if (u == v) throw ParseError(a.line, "self loop at '" + a.text + "'");
    if (net.FindLink(u, v) || net.FindLink(v, u)) continue;
    net.AddBidirectionalLink(u, v, kUnlimitedCapacity, profile);
  }
  for (const Demand& d : demands) {
    NodeIndex o = lookup(d.source, "demand");
    NodeIndex t = lookup(d.target, "demand");
    if (o == t) {
      throw ParseError(d.source.line, "demand with identical endpoints");
    }
    if (d.value == 0.0) continue;
    Flow f;
    f.id = static_cast<FlowIndex>(instance.flows.size());
    f.origin = o;
    f.destination = t;
    f.rate = d.value;
    instance.flows.push_back(f);
  }
  return instance;
}

Network BuildNsfnet(const CostProfile& profile, double capacity) {
  return WithUniformLinks(ParseTopology(BundledNsfnetTopology()), profile,
                          capacity);
}

}  // namespace antpower

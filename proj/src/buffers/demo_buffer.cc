// Copyright 2026 The DRLR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drlr/buffers/demo_buffer.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace drlr {
namespace {

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatCsv(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatDouble(v(i));
  }
  return out;
}

[[noreturn]] void ParseError(std::size_t line, const std::string& what) {
  throw std::runtime_error("demo file line " + std::to_string(line) + ": " +
                           what);
}

double ParseDouble(std::string_view text, std::size_t line) {
  std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE ||
      !std::isfinite(v)) {
    ParseError(line, "bad number '" + s + "'");
  }
  return v;
}

Eigen::VectorXd ParseCsv(std::string_view text, int expected, std::size_t line,
                         const char* field) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    vals.push_back(ParseDouble(text.substr(pos, stop - pos), line));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(vals.size()) != expected) {
    ParseError(line, std::string(field) + " has " +
                         std::to_string(vals.size()) + " values, header says " +
                         std::to_string(expected));
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), expected);
}

// Returns the value of `key=` in the whitespace-separated token list.
std::string_view Field(const std::vector<std::string_view>& tokens,
                       std::string_view key, std::size_t index,
                       std::size_t line) {
  if (index >= tokens.size() || tokens[index].substr(0, key.size()) != key) {
    ParseError(line, "expected field '" + std::string(key) + "'");
  }
  return tokens[index].substr(key.size());
}

std::vector<std::string_view> Split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size()) break;
    std::size_t end = s.find(' ', pos);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

DemoBuffer::DemoBuffer(int state_dim, int action_dim,
                       const std::vector<std::vector<Transition>>& episodes)
    : state_dim_(state_dim), action_dim_(action_dim) {
  for (const auto& ep : episodes) {
    if (ep.empty()) throw std::invalid_argument("DemoBuffer: empty episode");
    episode_starts_.push_back(transitions_.size());
    for (const Transition& t : ep) {
      ValidateTransition(t, state_dim, action_dim);
      transitions_.push_back(t);
    }
  }
}

std::size_t DemoBuffer::episode_end(std::size_t e) const {
  return e + 1 < episode_starts_.size() ? episode_starts_[e + 1]
                                        : transitions_.size();
}

std::vector<Transition> DemoBuffer::episode(std::size_t e) const {
  return {transitions_.begin() + episode_starts_.at(e),
          transitions_.begin() + episode_end(e)};
}

std::vector<std::vector<Transition>> DemoBuffer::episodes() const {
  std::vector<std::vector<Transition>> out;
  for (std::size_t e = 0; e < num_episodes(); ++e) out.push_back(episode(e));
  return out;
}

std::vector<std::size_t> DemoBuffer::SampleIndices(int n, Rng& rng) const {
  if (transitions_.empty()) {
    throw std::runtime_error("DemoBuffer: sample from empty buffer");
  }
  if (n <= 0) throw std::invalid_argument("DemoBuffer: n must be positive");
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = UniformIndex(rng, transitions_.size());
  return idx;
}

Batch DemoBuffer::Sample(int n, Rng& rng) const {
  std::vector<const Transition*> items;
  for (std::size_t i : SampleIndices(n, rng)) items.push_back(&transitions_[i]);
  return MakeBatch(items);
}

void SaveDemos(const DemoBuffer& demo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "drlr-demo v1 state_dim=" << demo.state_dim()
      << " action_dim=" << demo.action_dim() << '\n';
  for (std::size_t e = 0; e < demo.num_episodes(); ++e) {
    for (std::size_t i = demo.episode_starts()[e]; i < demo.episode_end(e);
         ++i) {
      const Transition& t = demo.at(i);
      out << "ep=" << e << " s=" << FormatCsv(t.state)
          << " a=" << FormatCsv(t.action) << " r=" << FormatDouble(t.reward)
          << " s2=" << FormatCsv(t.next_state)
          << " term=" << (t.terminal ? 1 : 0) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

DemoBuffer LoadDemos(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) ParseError(1, "empty file");
  int state_dim = 0;
  int action_dim = 0;
  {
    const auto tokens = Split(line);
    if (tokens.size() != 4 || tokens[0] != "drlr-demo" || tokens[1] != "v1") {
      ParseError(1, "bad header, expected 'drlr-demo v1 ...'");
    }
    state_dim = static_cast<int>(ParseDouble(Field(tokens, "state_dim=", 2, 1), 1));
    action_dim = static_cast<int>(ParseDouble(Field(tokens, "action_dim=", 3, 1), 1));
    if (state_dim <= 0 || action_dim <= 0) ParseError(1, "bad dimensions");
  }
  std::vector<std::vector<Transition>> episodes;
  long current_ep = -1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tokens = Split(line);
    if (tokens.size() != 6) ParseError(line_no, "expected 6 fields");
    const long ep = static_cast<long>(
        ParseDouble(Field(tokens, "ep=", 0, line_no), line_no));
    Transition t;
    t.state = ParseCsv(Field(tokens, "s=", 1, line_no), state_dim, line_no, "s");
    t.action =
        ParseCsv(Field(tokens, "a=", 2, line_no), action_dim, line_no, "a");
    t.reward = ParseDouble(Field(tokens, "r=", 3, line_no), line_no);
    t.next_state =
        ParseCsv(Field(tokens, "s2=", 4, line_no), state_dim, line_no, "s2");
    const auto term = Field(tokens, "term=", 5, line_no);
    if (term != "0" && term != "1") ParseError(line_no, "term must be 0 or 1");
    t.terminal = term == "1";
    if (ep != current_ep) {
      if (ep != current_ep + 1) ParseError(line_no, "episode ids must be consecutive");
      episodes.emplace_back();
      current_ep = ep;
    }
    episodes.back().push_back(std::move(t));
  }
  if (episodes.empty()) ParseError(line_no, "no transitions");
  return DemoBuffer(state_dim, action_dim, episodes);
}

DemoBuffer CorruptDemos(const DemoBuffer& demo, Corruption mode, double level,
                        Rng& rng, const RandomRolloutFn& random_rollout) {
  if (demo.empty()) throw std::invalid_argument("CorruptDemos: empty demo");
  if (!(level >= 0.0)) {
    throw std::invalid_argument("CorruptDemos: level must be >= 0");
  }
  auto episodes = demo.episodes();
  if (mode == Corruption::kNoisy) {
    if (level == 0.0) return demo;
    for (auto& ep : episodes) {
      for (Transition& t : ep) {
        for (Eigen::Index i = 0; i < t.action.size(); ++i) {
          t.action(i) =
              std::clamp(t.action(i) + level * StandardNormal(rng), -1.0, 1.0);
        }
      }
    }
    return DemoBuffer(demo.state_dim(), demo.action_dim(), episodes);
  }
  if (!random_rollout) {
    throw std::invalid_argument("CorruptDemos: half_random needs a rollout");
  }
  std::vector<std::size_t> order(episodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t replace = episodes.size() / 2;
  std::sort(order.begin(), order.begin() + replace);
  for (std::size_t k = 0; k < replace; ++k) {
    episodes[order[k]] = random_rollout(rng);
  }
  return DemoBuffer(demo.state_dim(), demo.action_dim(), episodes);
}

}  // namespace drlr

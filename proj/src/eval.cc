// Copyright 2026 The callboost Authors.
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

#include "callboost/eval.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "callboost/error.h"
#include "callboost/text_util.h"

namespace callboost {

double WerStats::Wer() const {
  if (n_ref_words == 0) return Errors() == 0 ? 0.0 : 100.0;
  return 100.0 * static_cast<double>(Errors()) /
         static_cast<double>(n_ref_words);
}

WerStats &WerStats::operator+=(const WerStats &o) {
  n_ref_words += o.n_ref_words;
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  return *this;
}

double CallsignMetrics::Accuracy() const {
  if (n_utterances == 0) return 0.0;
  return 100.0 * static_cast<double>(n_exact) /
         static_cast<double>(n_utterances);
}

Alignment Align(std::span<const std::string> ref,
                std::span<const std::string> hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<size_t>> cost(n + 1, std::vector<size_t>(m + 1));
  for (size_t i = 0; i <= n; ++i) cost[i][0] = i;
  for (size_t j = 0; j <= m; ++j) cost[0][j] = j;
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      size_t diag = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[i][j] = std::min({diag, cost[i][j - 1] + 1, cost[i - 1][j] + 1});
    }
  }

  Alignment out;
  out.stats.n_ref_words = n;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (cost[i][j] == cost[i - 1][j - 1] + (same ? 0 : 1)) {
        out.steps.push_back({same ? EditOp::kMatch : EditOp::kSubstitution,
                             static_cast<int>(i - 1), static_cast<int>(j - 1)});
        if (!same) ++out.stats.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && cost[i][j] == cost[i][j - 1] + 1) {
      out.steps.push_back({EditOp::kInsertion, -1, static_cast<int>(j - 1)});
      ++out.stats.insertions;
      --j;
      continue;
    }
    out.steps.push_back({EditOp::kDeletion, static_cast<int>(i - 1), -1});
    ++out.stats.deletions;
    --i;
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

namespace {

std::string JoinIds(const std::vector<std::string> &ids) {
  std::string out;
  for (size_t i = 0; i < ids.size() && i < 20; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > 20) out += ", ...";
  return out;
}

void CheckSameIds(const Transcripts &refs, const Transcripts &hyps) {
  std::vector<std::string> missing_hyp, missing_ref;
  for (const auto &[id, words] : refs) {
    if (!hyps.count(id)) missing_hyp.push_back(id);
  }
  for (const auto &[id, words] : hyps) {
    if (!refs.count(id)) missing_ref.push_back(id);
  }
  if (missing_hyp.empty() && missing_ref.empty()) return;
  std::string msg = "utterance ids differ between reference and hypothesis";
  if (!missing_hyp.empty()) msg += "; missing hypotheses: " + JoinIds(missing_hyp);
  if (!missing_ref.empty()) msg += "; missing references: " + JoinIds(missing_ref);
  throw ValidationError(msg);
}

}  // namespace

WerStats UtteranceWer(const Transcripts &refs, const Transcripts &hyps) {
  CheckSameIds(refs, hyps);
  WerStats total;
  for (const auto &[id, ref] : refs) total += Align(ref, hyps.at(id)).stats;
  return total;
}

CallsignEvalRecord ScoreCallsign(
    const std::string &utterance_id,
    const std::vector<std::vector<std::string>> &expansions,
    std::span<const std::string> hyp) {
  const size_t m = hyp.size();
  size_t best_dist = std::numeric_limits<size_t>::max();
  size_t best_exp = 0, best_start = 0, best_len = 0;
  for (size_t e = 0; e < expansions.size(); ++e) {
    const auto &ref = expansions[e];
    const size_t n = ref.size();
    for (size_t start = 0; start <= m; ++start) {
      // cost[r][c]: distance between ref[0..r) and hyp[start..start+c).
      const size_t width = m - start;
      std::vector<size_t> prev(width + 1), cur(width + 1);
      for (size_t c = 0; c <= width; ++c) prev[c] = c;
      for (size_t r = 1; r <= n; ++r) {
        cur[0] = r;
        for (size_t c = 1; c <= width; ++c) {
          size_t diag = prev[c - 1] + (ref[r - 1] == hyp[start + c - 1] ? 0 : 1);
          cur[c] = std::min({diag, cur[c - 1] + 1, prev[c] + 1});
        }
        std::swap(prev, cur);
      }
      for (size_t len = 0; len <= width; ++len) {
        if (prev[len] < best_dist) {
          best_dist = prev[len];
          best_exp = e;
          best_start = start;
          best_len = len;
        }
      }
    }
  }

  CallsignEvalRecord rec;
  rec.utterance_id = utterance_id;
  if (expansions.empty()) return rec;
  rec.ref_callsign_words = expansions[best_exp];
  rec.hyp_span_words.assign(hyp.begin() + best_start,
                            hyp.begin() + best_start + best_len);
  rec.callsign_edit_counts =
      Align(rec.ref_callsign_words, rec.hyp_span_words).stats;
  rec.exact_match = rec.callsign_edit_counts.Errors() == 0;
  return rec;
}

CallsignMetrics ScoreCallsigns(
    const Transcripts &refs, const Transcripts &hyps,
    const std::map<std::string, std::vector<std::vector<std::string>>>
        &callsigns) {
  std::vector<std::string> missing;
  for (const auto &[id, exps] : callsigns) {
    if (!refs.count(id) || !hyps.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    throw ValidationError("callsign ids without reference or hypothesis: " +
                          JoinIds(missing));
  }
  CallsignMetrics metrics;
  for (const auto &[id, exps] : callsigns) {
    if (exps.empty()) continue;
    CallsignEvalRecord rec = ScoreCallsign(id, exps, hyps.at(id));
    metrics.stats += rec.callsign_edit_counts;
    ++metrics.n_utterances;
    if (rec.exact_match) ++metrics.n_exact;
    metrics.records.push_back(std::move(rec));
  }
  return metrics;
}

Transcripts ParseTranscripts(std::istream &is, const std::string &source) {
  Transcripts out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    size_t tab = line.find('\t');
    std::string id = Trim(tab == std::string::npos ? line : line.substr(0, tab));
    std::string rest = tab == std::string::npos ? "" : line.substr(tab + 1);
    if (id.empty()) throw ParseError(source, lineno, "missing utterance id");
    if (!out.emplace(id, SplitWhitespace(ToLower(rest))).second) {
      throw ParseError(source, lineno, "duplicate utterance id " + id);
    }
  }
  return out;
}

Transcripts ReadTranscripts(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseTranscripts(in, path);
}

void WriteTranscripts(const Transcripts &t, std::ostream &os) {
  for (const auto &[id, words] : t) os << id << '\t' << Join(words) << '\n';
}

std::map<std::string, std::string> ParseCallsignFile(
    std::istream &is, const std::string &source) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw ParseError(source, lineno, "expected '<utt_id><TAB><callsign>'");
    }
    if (!out.emplace(fields[0], fields[1]).second) {
      throw ParseError(source, lineno, "duplicate utterance id " + fields[0]);
    }
  }
  return out;
}

std::map<std::string, std::string> ReadCallsignFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseCallsignFile(in, path);
}

namespace {

std::string Fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

void WriteReportTsv(const std::vector<ReportRow> &rows, std::ostream &os) {
  os << "system\tWER\tCallWER\tAcc\n";
  for (const auto &row : rows) {
    os << row.system << '\t' << Fixed1(row.wer) << '\t' << Fixed1(row.call_wer)
       << '\t' << Fixed1(row.accuracy) << '\n';
  }
}

void WriteReportTable(const std::vector<ReportRow> &rows, std::ostream &os) {
  size_t width = 5;
  for (const auto &row : rows) width = std::max(width, row.system.size());
  auto pad = [](const std::string &s, size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  auto lpad = [](const std::string &s, size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };
  const std::string rule(width + 3 * 9, '-');
  os << pad("Model", width) << lpad("WER", 9) << lpad("CallWER", 9)
     << lpad("Acc", 9) << '\n'
     << rule << '\n';
  for (const auto &row : rows) {
    os << pad(row.system, width) << lpad(Fixed1(row.wer), 9)
       << lpad(Fixed1(row.call_wer), 9) << lpad(Fixed1(row.accuracy), 9)
       << '\n';
  }
}

}  // namespace callboost

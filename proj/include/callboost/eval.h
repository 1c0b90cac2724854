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
//
// Word error rate over whole utterances, word error rate restricted to the
// callsign, and callsign accuracy (share of utterances whose callsign is
// recognized without a single error).

#ifndef CALLBOOST_EVAL_H_
#define CALLBOOST_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace callboost {

enum class EditOp { kMatch, kSubstitution, kInsertion, kDeletion };

struct WerStats {
  size_t n_ref_words = 0;
  size_t substitutions = 0;
  size_t insertions = 0;
  size_t deletions = 0;

  size_t Errors() const { return substitutions + insertions + deletions; }
  // Percent. With no reference words: 0 when error-free, 100 otherwise.
  double Wer() const;

  WerStats &operator+=(const WerStats &o);
  friend bool operator==(const WerStats &, const WerStats &) = default;
};

struct AlignmentStep {
  EditOp op;
  int ref_index;  // -1 for insertions
  int hyp_index;  // -1 for deletions
};

struct Alignment {
  std::vector<AlignmentStep> steps;
  WerStats stats;
};

// Levenshtein alignment with unit costs. Among minimal alignments the
// backtrace prefers substitution/match, then insertion, then deletion.
Alignment Align(std::span<const std::string> ref,
                std::span<const std::string> hyp);

using Transcripts = std::map<std::string, std::vector<std::string>>;

// Corpus-level pooled counts. Throws ValidationError listing the ids that
// appear on only one side.
WerStats UtteranceWer(const Transcripts &refs, const Transcripts &hyps);

struct CallsignEvalRecord {
  std::string utterance_id;
  std::vector<std::string> ref_callsign_words;
  std::vector<std::string> hyp_span_words;
  WerStats callsign_edit_counts;
  bool exact_match = false;
};

struct CallsignMetrics {
  WerStats stats;  // pooled over the best spans
  size_t n_utterances = 0;
  size_t n_exact = 0;
  std::vector<CallsignEvalRecord> records;

  double CallWer() const { return stats.Wer(); }
  // Percent of utterances with a ground-truth callsign scored exactly.
  double Accuracy() const;
};

// Finds, per utterance, the contiguous hypothesis span (any length, including
// empty) with the smallest edit distance to any of the utterance's
// ground-truth expansions. Ties go to the earlier expansion, then the
// leftmost, then the shortest span.
CallsignEvalRecord ScoreCallsign(
    const std::string &utterance_id,
    const std::vector<std::vector<std::string>> &expansions,
    std::span<const std::string> hyp);

// `callsigns` maps utterance id to its ground-truth expansions; utterances
// absent from it (or with no expansions) are not scored. Every scored id must
// be present in `refs` and `hyps`.
CallsignMetrics ScoreCallsigns(
    const Transcripts &refs, const Transcripts &hyps,
    const std::map<std::string, std::vector<std::vector<std::string>>>
        &callsigns);

// Lines of "<utt_id><TAB><words...>". Words are lowercased.
Transcripts ReadTranscripts(const std::string &path);
Transcripts ParseTranscripts(std::istream &is, const std::string &source);
void WriteTranscripts(const Transcripts &t, std::ostream &os);

// Lines of "<utt_id><TAB><raw callsign>".
std::map<std::string, std::string> ReadCallsignFile(const std::string &path);
std::map<std::string, std::string> ParseCallsignFile(std::istream &is,
                                                     const std::string &source);

struct ReportRow {
  std::string system;
  double wer = 0.0;
  double call_wer = 0.0;
  double accuracy = 0.0;
};

void WriteReportTsv(const std::vector<ReportRow> &rows, std::ostream &os);
void WriteReportTable(const std::vector<ReportRow> &rows, std::ostream &os);

}  // namespace callboost

#endif  // CALLBOOST_EVAL_H_

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

#include "callboost/biasing.h"

#include <algorithm>
#include <map>
#include <set>

#include "callboost/error.h"
#include "callboost/fst_ops.h"
#include "callboost/text_util.h"

namespace callboost {
namespace {

struct TrieNode {
  std::map<Label, int> children;
  bool is_end = false;
  // Length of the longest variant through this node.
  size_t max_len = 0;
  StateId state = kNoStateId;
};

}  // namespace

Fst BuildBiasingFst(const std::vector<ExpansionVariant> &variants,
                    Weight discount, const SymbolTable &syms,
                    const BiasingOptions &opts) {
  if (!(discount.Value() > 0) || !discount.IsFinite()) {
    throw ValidationError("biasing discount must be a positive cost, got " +
                          FormatDouble(discount.Value()));
  }
  auto table = std::make_shared<SymbolTable>(syms);

  std::set<std::vector<Label>> sequences;
  for (const auto &variant : variants) {
    if (variant.words.empty()) throw ValidationError("empty expansion variant");
    std::vector<Label> labels;
    for (const auto &word : variant.words) {
      auto id = table->Find(word);
      if (!id) {
        if (!opts.allow_new_words) {
          throw ValidationError("word '" + word + "' of '" + variant.Text() +
                                "' is not in the symbol table");
        }
        id = table->AddSymbol(word);
      }
      labels.push_back(*id);
    }
    sequences.insert(std::move(labels));
  }

  std::vector<TrieNode> trie(1);
  for (const auto &seq : sequences) {
    int node = 0;
    for (Label l : seq) {
      auto it = trie[node].children.find(l);
      int child;
      if (it == trie[node].children.end()) {
        child = static_cast<int>(trie.size());
        trie[node].children.emplace(l, child);
        trie.emplace_back();
      } else {
        child = it->second;
      }
      trie[child].max_len = std::max(trie[child].max_len, seq.size());
      node = child;
    }
    trie[node].is_end = true;
  }

  Fst fst;
  const StateId root = fst.AddState();
  fst.SetStart(root);
  fst.SetFinal(root, Weight::One());
  for (Label l : table->Labels()) {
    fst.AddArc(root, Arc{l, l, Weight::One(), root});
  }

  const double d = discount.Value();
  trie[0].state = root;
  // Depth-first over the trie carrying the credit accumulated so far.
  struct Item {
    int node;
    double credit;
  };
  std::vector<Item> stack{{0, 0.0}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const TrieNode &node = trie[item.node];
    const StateId from = node.state;
    for (const auto &[label, child_idx] : node.children) {
      TrieNode &child = trie[child_idx];
      if (child.children.empty()) {
        // Leaf: the last word completes the credit and returns to the root.
        fst.AddArc(from, Arc{label, label, Weight(-d - item.credit), root});
        continue;
      }
      const double share = -d / static_cast<double>(child.max_len);
      const double credit = item.credit + share;
      child.state = fst.AddState();
      fst.AddArc(from, Arc{label, label, Weight(share), child.state});
      fst.AddArc(child.state,
                 Arc{kEpsilon, kEpsilon, Weight(-credit), root});
      if (child.is_end) {
        fst.AddArc(child.state,
                   Arc{kEpsilon, kEpsilon, Weight(-d - credit), root});
      }
      stack.push_back({child_idx, credit});
    }
  }

  Fst sorted = ArcSort(fst, SortSide::kInput);
  sorted.SetInputSymbols(table);
  sorted.SetOutputSymbols(table);
  sorted.AddMetadata("bias variants=" + std::to_string(sequences.size()) +
                     " discount=" + FormatDouble(d));
  return sorted;
}

}  // namespace callboost

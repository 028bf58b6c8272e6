#include "emseq/rtree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "emseq/error.hpp"
#include "emseq/suffix_index.hpp"

namespace emseq {

RnSet::RnSet(std::size_t n, std::vector<Entry> entries, std::optional<std::size_t> x)
    : n_(n), entries_(std::move(entries)), x_(x) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.word < b.word; });
  lookup_.reserve(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    lookup_.emplace(entries_[k].word, static_cast<std::uint32_t>(k));
    if (entries_[k].kind == WordClassKind::bad) ++bad_;
  }
}

std::vector<Word> RnSet::words() const {
  std::vector<Word> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.word);
  return out;
}

bool RnSet::contains(const Word& w) const { return lookup_.contains(w); }

const RnSet::Entry* RnSet::find(const Word& w) const {
  const auto it = lookup_.find(w);
  return it == lookup_.end() ? nullptr : &entries_[it->second];
}

std::size_t RnSet::count_ending_with(const Word& tail) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [&](const Entry& e) { return e.word.ends_with(tail); }));
}

std::size_t RnSet::count_with_min_length(std::size_t len) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [&](const Entry& e) { return e.word.size() >= len; }));
}

RnSet build_rn(const BitSequence& seq, std::size_t n) {
  if (n > seq.size()) {
    throw Error(Errc::range, "n=" + std::to_string(n) + " exceeds sequence length " +
                                 std::to_string(seq.size()));
  }
  const BitSequence text = seq.prefix(n);
  const SuffixArray sa(text);
  const auto order = sa.sa();
  const auto lcp = sa.lcp();

  // A word w occurring twice is first met at the rank right after the top
  // of its SA interval, with |w| in (lcp[r-1], lcp[r]].
  std::vector<RnSet::Entry> entries;
  std::unordered_map<Word, std::uint32_t, WordHash> slot;
  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t from = lcp[r - 1] + std::size_t{1};
    const std::size_t to = lcp[r];
    for (std::size_t len = from; len <= to; ++len) {
      const Word w = text.word(order[r] + std::size_t{1}, len);
      slot.emplace(w, static_cast<std::uint32_t>(entries.size()));
      entries.push_back({w, 0, 0, WordClassKind::undetermined});
    }
  }

  // First two starts, scanning positions in order. Only prefixes up to the
  // longest repeated prefix at i can be in R_n.
  std::vector<std::uint32_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<std::uint32_t>(r);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t r = rank[p];
    const std::size_t rep = std::max<std::size_t>(lcp[r], r + 1 < n ? lcp[r + 1] : 0);
    for (std::size_t len = 1; len <= rep; ++len) {
      auto& e = entries[slot.at(text.word(p + 1, len))];
      if (e.first == 0) {
        e.first = static_cast<std::uint32_t>(p + 1);
      } else if (e.second == 0) {
        e.second = static_cast<std::uint32_t>(p + 1);
      }
    }
  }
  for (auto& e : entries) {
    if (e.first == 1) {
      e.kind = WordClassKind::boundary;
    } else {
      e.kind = text[e.first - 1] != text[e.second - 1] ? WordClassKind::good
                                                       : WordClassKind::bad;
    }
  }

  std::optional<std::size_t> x;
  if (seq.size() > n) {
    // i + L_i - 1 <= n is decided exactly by L_i measured on x_1^{n+1}.
    const SuffixArray ext(seq.prefix(n + 1));
    const auto lf = longest_factor(ext, FactorDirection::toward_start);
    for (std::size_t i = n; i >= 1; --i) {
      if (lf[i - 1] <= n - i + 1) {
        x = i;
        break;
      }
    }
  }
  return RnSet(n, std::move(entries), x);
}

namespace {

StrandDecomposition decompose(std::span<const TnVertex> vs) {
  StrandDecomposition out;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].child_count() != 1) continue;
    const std::int32_t parent = vs[v].parent;
    if (parent != kNoVertex && vs[static_cast<std::size_t>(parent)].child_count() == 1) {
      continue;
    }
    Strand s{v, 0};
    std::size_t cur = v;
    while (vs[cur].child_count() == 1) {
      ++s.edges;
      const auto& c = vs[cur].child;
      cur = static_cast<std::size_t>(c[0] != kNoVertex ? c[0] : c[1]);
    }
    out.strands.push_back(s);
  }
  for (const Strand& s : out.strands) {
    ++out.histogram[s.edges];
    if (s.edges > 2) {
      ++out.long_strands;
      out.excess_edges += s.edges - 2;
    }
  }
  return out;
}

}  // namespace

std::optional<std::size_t> TnTree::find(const Word& w) const {
  const auto it = lookup_.find(w);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> TnTree::ordered() const {
  std::vector<std::size_t> ids(vertices_.size());
  for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = v;
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return vertices_[a].word < vertices_[b].word;
  });
  return ids;
}

TnTree build_tn(const RnSet& rn) {
  TnTree tree;
  tree.n_ = rn.n();
  tree.bad_words_ = rn.bad_word_count();
  auto& vs = tree.vertices_;
  vs.resize(rn.size() + 1);
  tree.lookup_.reserve(vs.size());
  tree.lookup_.emplace(Word{}, 0u);
  const auto entries = rn.entries();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    vs[k + 1].word = entries[k].word;
    tree.lookup_.emplace(entries[k].word, static_cast<std::uint32_t>(k + 1));
  }
  auto in_rn = [&](const Word& w) { return w.empty() || tree.lookup_.contains(w); };
  for (std::size_t v = 1; v < vs.size(); ++v) {
    const Word& w = vs[v].word;
    const auto parent = tree.lookup_.find(w.drop_front());
    if (parent == tree.lookup_.end()) {
      throw std::logic_error("R_n is not suffix-closed at " + w.str());
    }
    vs[v].parent = static_cast<std::int32_t>(parent->second);
    vs[parent->second].child[static_cast<std::size_t>(w.front())] =
        static_cast<std::int32_t>(v);
  }
  for (auto& vx : vs) {
    const Word& w = vx.word;
    vx.balanced = vx.child_count() == 2;
    if (w.size() + 2 <= Word::kMaxLength) {
      vx.in_core = in_rn(w.append(0)) && in_rn(w.append(1));
      vx.in_zeta = in_rn(w.append(0).append(0)) && in_rn(w.append(0).append(1)) &&
                   in_rn(w.append(1).append(0)) && in_rn(w.append(1).append(1));
    }
  }
  // Children are longer than parents, so a length-descending sweep folds
  // subtree sizes upward.
  std::vector<std::size_t> by_len(vs.size());
  for (std::size_t v = 0; v < vs.size(); ++v) by_len[v] = v;
  std::sort(by_len.begin(), by_len.end(), [&](std::size_t a, std::size_t b) {
    return vs[a].word.size() > vs[b].word.size();
  });
  for (const std::size_t v : by_len) {
    if (vs[v].parent != kNoVertex) {
      vs[static_cast<std::size_t>(vs[v].parent)].subtree += vs[v].subtree;
    }
  }
  const StrandDecomposition dec = decompose(vs);
  for (std::size_t id = 0; id < dec.strands.size(); ++id) {
    std::size_t cur = dec.strands[id].top;
    while (vs[cur].child_count() == 1) {
      vs[cur].strand = static_cast<std::int32_t>(id);
      const auto& c = vs[cur].child;
      cur = static_cast<std::size_t>(c[0] != kNoVertex ? c[0] : c[1]);
    }
  }
  return tree;
}

std::size_t subtree_count(const TnTree& tree, const Word& x) {
  if (x.empty()) return tree.size();
  const auto v = tree.find(x);
  return v ? tree.vertices()[*v].subtree : 0;
}

StrandDecomposition strands(const TnTree& tree) { return decompose(tree.vertices()); }

TreeStats zeta_stats(const TnTree& tree) {
  TreeStats st;
  st.n = tree.n();
  st.vertex_count = tree.size();
  st.bad_word_count = tree.bad_word_count();
  const auto vs = tree.vertices();
  for (const TnVertex& v : vs) {
    if (!v.in_zeta) continue;
    ++st.gamma;
    int zc = 0;
    for (const std::int32_t c : v.child) {
      if (c != kNoVertex && vs[static_cast<std::size_t>(c)].in_zeta) ++zc;
    }
    if (zc == 0) ++st.leaves;
    if (zc == 1) ++st.unary;
  }
  st.gamma_identity = st.gamma == 0 || st.gamma == 2 * st.leaves + st.unary - 1;
  for (const char* xy : {"00", "01", "10", "11"}) {
    const std::size_t t = subtree_count(tree, Word::parse(xy));
    st.t_xy[xy] = t;
    st.j[xy] = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(st.gamma);
    if (st.n > 0) {
      const double over = static_cast<double>(st.j[xy]) - 7.0 * static_cast<double>(st.gamma);
      st.j_bound_residual = std::max(st.j_bound_residual, std::max(0.0, over) / static_cast<double>(st.n));
    }
  }
  const StrandDecomposition dec = strands(tree);
  st.strand_histogram = dec.histogram;
  st.strand_count = dec.strands.size();
  st.excess_edges = dec.excess_edges;
  return st;
}

namespace {

std::string vertex_id(const Word& w) { return w.empty() ? "root" : "\"" + w.str() + "\""; }

}  // namespace

std::string export_dot(const TnTree& tree, const DotOptions& options) {
  const auto vs = tree.vertices();
  auto visible = [&](const TnVertex& v) {
    return options.max_depth == 0 || v.word.size() <= options.max_depth;
  };
  std::ostringstream out;
  out << "digraph Tn {\n";
  out << "  graph [label=\"T_n, n=" << tree.n() << ", non-root vertices="
      << tree.size() << "\"];\n";
  out << "  node [shape=circle, style=filled, fontsize=10];\n";
  const auto ids = tree.ordered();
  for (const std::size_t id : ids) {
    const TnVertex& v = vs[id];
    if (!visible(v)) continue;
    out << "  " << vertex_id(v.word) << " [label=\""
        << (v.word.empty() ? std::string("root") : v.word.str()) << "\"";
    if (options.color_balance) {
      out << ", fillcolor=" << (v.balanced ? "green" : "red");
    }
    out << "];\n";
  }
  for (const std::size_t id : ids) {
    const TnVertex& v = vs[id];
    if (v.parent == kNoVertex || !visible(v)) continue;
    const TnVertex& p = vs[static_cast<std::size_t>(v.parent)];
    out << "  " << vertex_id(p.word) << " -> " << vertex_id(v.word) << " [label=\""
        << v.word.front() << "\"";
    if (p.strand != kNoVertex) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string tree_stats_json(const TreeStats& st) {
  nlohmann::ordered_json j;
  j["n"] = st.n;
  j["vertices"] = st.vertex_count;
  j["vertices_exclude_root"] = true;
  j["gamma"] = st.gamma;
  j["leaves"] = st.leaves;
  j["unary"] = st.unary;
  j["gamma_identity"] = st.gamma_identity;
  j["zeta_core"] = "vertices Z (root included) with Z00, Z01, Z10, Z11 in R_n";
  nlohmann::ordered_json jj, tt;
  for (const auto& [k, v] : st.j) jj[k] = v;
  for (const auto& [k, v] : st.t_xy) tt[k] = v;
  j["j"] = jj;
  j["t_xy"] = tt;
  j["j_bound_residual"] = st.j_bound_residual;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [len, count] : st.strand_histogram) hist[std::to_string(len)] = count;
  j["strand_histogram"] = hist;
  j["strand_count"] = st.strand_count;
  j["excess_edges"] = st.excess_edges;
  j["bad_word_count"] = st.bad_word_count;
  return j.dump(2) + "\n";
}

}  // namespace emseq

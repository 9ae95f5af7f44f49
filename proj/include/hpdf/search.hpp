#pragma once

#include <atomic>
#include <chrono>
#include <climits>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "difference.hpp"
#include "group.hpp"
#include "params.hpp"

// Pruned exhaustive backtracking search for Hadamard partitioned difference
// families with a prescribed size multiset in a given group.
//
// Elements are assigned in ascending index order to blocks ordered by size
// descending.  A branch is cut as soon as any running difference count exceeds
// lambda, when interchangeable empty blocks would repeat work, or when the
// index-2 intersection identities can no longer be met for a fixed index-2
// subgroup (when the group has one).  Under translation normalization the
// identity is pinned into the first block of the largest size class, which is
// sound because verification verdicts are translation-invariant.
//
// The top two levels of the tree are split into independent subtrees;
// parallel workers share nothing and results are merged in subtree order, so
// the family list is identical for every parallel width.

namespace hpdf {

enum class SearchMode { first, all, count };
enum class Normalization { translation, none };

struct SearchSpec {
  const FiniteGroup* group = nullptr;
  std::vector<int> sizes;  // block sizes, any order
  SearchMode mode = SearchMode::first;
  Normalization normalization = Normalization::translation;
  int parallel_width = 1;
  std::optional<long long> node_budget;
  // Streaming hook, invoked under a lock as families are found.  With
  // parallel_width > 1 the invocation order is not deterministic; the merged
  // outcome always is.
  std::function<void(const Family&)> on_family;
  // Progress hook, invoked with the running node count roughly every
  // progress_interval nodes.
  std::function<void(long long)> on_progress;
  long long progress_interval = 1LL << 24;
};

struct SearchOutcome {
  std::vector<Family> families;    // empty in count mode
  long long families_found = 0;
  bool exhaustive = false;         // full normalized space covered within budget
  long long nodes_explored = 0;
  long long peak_diff_count = 0;   // largest running count reached; never exceeds lambda
  std::chrono::milliseconds wall_time{0};
  std::string skip_reason;         // set when the size conditions already rule K out
};

namespace detail {

struct SearchContext {
  const FiniteGroup* G = nullptr;
  int v = 0;
  int lambda = 0;
  std::vector<int> sizes;  // descending
  int t = 0;
  std::vector<int> diff;   // diff[x*v+y] = x * y^-1
  std::vector<char> in_h;
  bool use_h = false;
  SearchMode mode = SearchMode::first;
  Normalization norm = Normalization::translation;
  long long budget = -1;  // < 0 means unbounded
  std::function<void(const Family&)> on_family;
  std::function<void(long long)> on_progress;
  long long progress_interval = 1LL << 24;
  std::mutex emit_mutex;

  std::atomic<long long> nodes{0};
  std::atomic<long long> next_progress{0};
  std::atomic<bool> budget_hit{false};
  std::atomic<long long> first_found_job{LLONG_MAX};

  int free_count() const { return norm == Normalization::translation ? v - 1 : v; }
  int elem_at(int pos) const { return norm == Normalization::translation ? pos + 1 : pos; }
};

class SearchWorker {
 public:
  std::vector<Family> families;
  long long found = 0;
  long long peak = 0;

  SearchWorker(SearchContext& ctx, long long job) : ctx_(ctx), job_(job) {
    cnt_.assign(ctx_.v, 0);
    scratch_.assign(2 * static_cast<size_t>(ctx_.v) + 2, 0);
    rem_ = ctx_.sizes;
    members_.resize(ctx_.t);
    for (int b = 0; b < ctx_.t; ++b) members_[b].reserve(ctx_.sizes[b]);
    s_h_.assign(ctx_.t, 0);
    if (ctx_.use_h) {
      for (int g = 0; g < ctx_.v; ++g) (ctx_.in_h[g] ? h_rem_ : n_rem_)++;
    }
    if (ctx_.norm == Normalization::translation) {
      consume_element(0);
      if (!place(0, 0, ctx_.use_h && ctx_.in_h[0]))
        throw std::logic_error("identity placement cannot fail");
    }
  }

  void apply_prefix(const std::vector<int>& choices, int start_pos) {
    for (size_t p = 0; p < choices.size(); ++p) {
      const int e = ctx_.elem_at(start_pos + static_cast<int>(p));
      const bool is_h = ctx_.use_h && ctx_.in_h[e];
      consume_element(e);
      if (!place(e, choices[p], is_h)) throw std::logic_error("prefix replay cannot fail");
    }
  }

  // Enumerates the valid assignments of the first `limit` free elements.
  void collect_prefixes(int limit, std::vector<std::vector<int>>& out) {
    std::vector<int> path;
    collect_rec(0, limit, path, out);
    flush_nodes();
  }

  void run(int start_pos) {
    dfs(start_pos);
    flush_nodes();
  }

 private:
  SearchContext& ctx_;
  long long job_;
  std::vector<int> cnt_, rem_, s_h_, scratch_;
  std::vector<std::vector<int>> members_;
  int h_rem_ = 0, n_rem_ = 0;
  long long nodes_ = 0, flushed_ = 0;
  unsigned check_tick_ = 0;
  bool abort_ = false;

  void consume_element(int e) {
    if (ctx_.use_h) (ctx_.in_h[e] ? h_rem_ : n_rem_)--;
  }
  void restore_element(int e) {
    if (ctx_.use_h) (ctx_.in_h[e] ? h_rem_ : n_rem_)++;
  }

  void flush_nodes() {
    const long long d = nodes_ - flushed_;
    if (d == 0) return;
    const long long total = ctx_.nodes.fetch_add(d, std::memory_order_relaxed) + d;
    flushed_ = nodes_;
    if (ctx_.budget >= 0 && total >= ctx_.budget)
      ctx_.budget_hit.store(true, std::memory_order_relaxed);
    if (ctx_.on_progress) {
      long long mark = ctx_.next_progress.load(std::memory_order_relaxed);
      if (total >= mark &&
          ctx_.next_progress.compare_exchange_strong(mark, total + ctx_.progress_interval)) {
        std::lock_guard<std::mutex> lock(ctx_.emit_mutex);
        ctx_.on_progress(total);
      }
    }
  }

  bool should_abort() {
    if ((++check_tick_ & 1023u) != 0) return abort_;
    flush_nodes();
    if (ctx_.budget_hit.load(std::memory_order_relaxed)) abort_ = true;
    if (ctx_.mode == SearchMode::first &&
        job_ > ctx_.first_found_job.load(std::memory_order_relaxed))
      abort_ = true;
    return abort_;
  }

  bool place(int e, int b, bool is_h) {
    auto& mem = members_[b];
    const int* drow = ctx_.diff.data() + static_cast<size_t>(e) * ctx_.v;
    int* touched = scratch_.data();
    int sp = 0;
    bool ok = true;
    for (int y : mem) {
      const int g1 = drow[y];
      touched[sp++] = g1;
      if (++cnt_[g1] > ctx_.lambda) {
        ok = false;
        break;
      }
      if (cnt_[g1] > peak) peak = cnt_[g1];
      const int g2 = ctx_.diff[static_cast<size_t>(y) * ctx_.v + e];
      touched[sp++] = g2;
      if (++cnt_[g2] > ctx_.lambda) {
        ok = false;
        break;
      }
      if (cnt_[g2] > peak) peak = cnt_[g2];
    }
    if (!ok) {
      while (sp) --cnt_[touched[--sp]];
      return false;
    }
    mem.push_back(e);
    --rem_[b];
    if (is_h) ++s_h_[b];
    return true;
  }

  void unplace(int e, int b, bool is_h) {
    auto& mem = members_[b];
    mem.pop_back();
    ++rem_[b];
    if (is_h) --s_h_[b];
    const int* drow = ctx_.diff.data() + static_cast<size_t>(e) * ctx_.v;
    for (int y : mem) {
      --cnt_[drow[y]];
      --cnt_[ctx_.diff[static_cast<size_t>(y) * ctx_.v + e]];
    }
  }

  // Interval bound on the final values of sum 2 s_i (k_i - s_i) given the
  // current intersections, the free capacities and the remaining supply of
  // H / non-H elements.  Prunes when lambda^2 falls outside.
  bool index2_feasible() const {
    long long lo_sum = 0, hi_sum = 0;
    const long long target = static_cast<long long>(ctx_.lambda) * ctx_.lambda;
    for (int b = 0; b < ctx_.t; ++b) {
      const int k = ctx_.sizes[b];
      const int s = s_h_[b], r = rem_[b];
      const int lo = s + std::max(0, r - n_rem_);
      const int hi = s + std::min(r, h_rem_);
      const long long fl = 2LL * lo * (k - lo);
      const long long fh = 2LL * hi * (k - hi);
      lo_sum += std::min(fl, fh);
      const int mid = k / 2;
      if (mid <= lo)
        hi_sum += fl;
      else if (mid >= hi)
        hi_sum += fh;
      else
        hi_sum += 2LL * mid * (k - mid);
    }
    return lo_sum <= target && target <= hi_sum;
  }

  bool allowed_slot(int b) const {
    if (rem_[b] == 0) return false;
    // interchangeable empty blocks: only the first empty slot of a size class
    if (members_[b].empty() && b > 0 && ctx_.sizes[b - 1] == ctx_.sizes[b] &&
        members_[b - 1].empty())
      return false;
    return true;
  }

  bool emit() {
    Family fam;
    fam.blocks = members_;
    const VerificationReport rep = verify_hpdf(*ctx_.G, fam);
    if (rep.kind != DesignKind::hpdf)
      throw std::logic_error("search emitted a family that fails verification");
    ++found;
    if (ctx_.mode != SearchMode::count) families.push_back(fam);
    if (ctx_.on_family) {
      std::lock_guard<std::mutex> lock(ctx_.emit_mutex);
      ctx_.on_family(fam);
    }
    if (ctx_.mode == SearchMode::first) {
      long long cur = ctx_.first_found_job.load();
      while (job_ < cur && !ctx_.first_found_job.compare_exchange_weak(cur, job_)) {
      }
      return false;
    }
    return true;
  }

  // Returns false to stop the whole traversal (first-found or abort).
  bool dfs(int pos) {
    if (pos == ctx_.free_count()) return emit();
    if (should_abort()) return false;
    const int e = ctx_.elem_at(pos);
    const bool is_h = ctx_.use_h && ctx_.in_h[e];
    consume_element(e);
    bool cont = true;
    for (int b = 0; b < ctx_.t && cont; ++b) {
      if (!allowed_slot(b)) continue;
      ++nodes_;
      if (!place(e, b, is_h)) continue;
      if (!ctx_.use_h || index2_feasible()) cont = dfs(pos + 1);
      unplace(e, b, is_h);
    }
    restore_element(e);
    return cont;
  }

  void collect_rec(int pos, int limit, std::vector<int>& path,
                   std::vector<std::vector<int>>& out) {
    if (pos == limit) {
      out.push_back(path);
      return;
    }
    const int e = ctx_.elem_at(pos);
    const bool is_h = ctx_.use_h && ctx_.in_h[e];
    consume_element(e);
    for (int b = 0; b < ctx_.t; ++b) {
      if (!allowed_slot(b)) continue;
      ++nodes_;
      if (!place(e, b, is_h)) continue;
      if (!ctx_.use_h || index2_feasible()) {
        path.push_back(b);
        collect_rec(pos + 1, limit, path, out);
        path.pop_back();
      }
      unplace(e, b, is_h);
    }
    restore_element(e);
  }
};

}  // namespace detail

inline SearchOutcome search(const SearchSpec& spec) {
  if (!spec.group) throw std::invalid_argument("search: group is required");
  const FiniteGroup& G = *spec.group;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0);
  };

  SearchOutcome out;
  if (spec.sizes.empty()) throw std::invalid_argument("search: size multiset must be nonempty");
  long long sum = 0;
  for (int k : spec.sizes) {
    if (k < 1) throw std::invalid_argument("search: block sizes must be >= 1");
    sum += k;
  }
  if (sum != G.order())
    throw std::invalid_argument("search: sizes sum to " + std::to_string(sum) +
                                ", expected the group order " + std::to_string(G.order()));

  const HpdfCheck adm =
      is_admissible_hpdf(std::vector<long long>(spec.sizes.begin(), spec.sizes.end()));
  if (!adm.verdict.admissible) {
    // The size conditions are necessary, so an empty result is still an
    // exhaustiveness certificate.
    out.exhaustive = true;
    out.skip_reason = adm.verdict.failed_rule + ": " + adm.verdict.witness;
    out.wall_time = elapsed();
    return out;
  }

  detail::SearchContext ctx;
  ctx.G = &G;
  ctx.v = G.order();
  ctx.lambda = ctx.v / 2;
  ctx.sizes = spec.sizes;
  std::sort(ctx.sizes.begin(), ctx.sizes.end(), std::greater<int>());
  ctx.t = static_cast<int>(ctx.sizes.size());
  ctx.diff.resize(static_cast<size_t>(ctx.v) * ctx.v);
  for (int x = 0; x < ctx.v; ++x)
    for (int y = 0; y < ctx.v; ++y)
      ctx.diff[static_cast<size_t>(x) * ctx.v + y] = G.difference(x, y);
  const std::vector<Subgroup> subs = index2_subgroups(G);
  if (!subs.empty()) {
    ctx.use_h = true;
    ctx.in_h.assign(ctx.v, 0);
    for (int g : subs.front().members) ctx.in_h[g] = 1;
  }
  ctx.mode = spec.mode;
  ctx.norm = spec.normalization;
  ctx.budget = spec.node_budget.value_or(-1);
  ctx.on_family = spec.on_family;
  ctx.on_progress = spec.on_progress;
  ctx.progress_interval = std::max(1LL, spec.progress_interval);
  ctx.next_progress.store(ctx.progress_interval);

  const int prefix_depth = std::min(2, ctx.free_count());
  std::vector<std::vector<int>> prefixes;
  {
    detail::SearchWorker gen(ctx, -1);
    gen.collect_prefixes(prefix_depth, prefixes);
    out.peak_diff_count = std::max(out.peak_diff_count, gen.peak);
  }

  struct JobResult {
    std::vector<Family> families;
    long long found = 0;
    long long peak = 0;
    bool ran = false;
  };
  std::vector<JobResult> results(prefixes.size());

  auto run_job = [&](size_t j) {
    detail::SearchWorker w(ctx, static_cast<long long>(j));
    w.apply_prefix(prefixes[j], 0);
    w.run(prefix_depth);
    results[j].families = std::move(w.families);
    results[j].found = w.found;
    results[j].peak = w.peak;
    results[j].ran = true;
  };

  const int width = std::max(1, spec.parallel_width);
  if (width <= 1 || prefixes.size() <= 1) {
    for (size_t j = 0; j < prefixes.size(); ++j) {
      if (ctx.budget_hit.load()) break;
      run_job(j);
      if (ctx.mode == SearchMode::first && results[j].found > 0) break;
    }
  } else {
    std::atomic<size_t> cursor{0};
    const size_t nthreads = std::min<size_t>(width, prefixes.size());
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (size_t i = 0; i < nthreads; ++i)
      threads.emplace_back([&] {
        for (;;) {
          const size_t j = cursor.fetch_add(1);
          if (j >= prefixes.size()) break;
          if (ctx.budget_hit.load()) continue;
          if (ctx.mode == SearchMode::first &&
              static_cast<long long>(j) > ctx.first_found_job.load())
            continue;
          run_job(j);
        }
      });
    for (auto& th : threads) th.join();
  }

  if (ctx.mode == SearchMode::first) {
    for (size_t j = 0; j < results.size(); ++j)
      if (results[j].found > 0) {
        out.families = std::move(results[j].families);
        out.families_found = static_cast<long long>(out.families.size());
        break;
      }
  } else {
    for (auto& r : results) {
      out.families_found += r.found;
      for (auto& f : r.families) out.families.push_back(std::move(f));
    }
  }
  for (const auto& r : results) out.peak_diff_count = std::max(out.peak_diff_count, r.peak);
  out.nodes_explored = ctx.nodes.load();
  const bool budget_abort = ctx.budget_hit.load();
  out.exhaustive = !budget_abort && !(ctx.mode == SearchMode::first && out.families_found > 0);
  out.wall_time = elapsed();
  return out;
}

// Parameter- and group-level feasibility checks that may rule out a search
// before it starts: the size conditions, the three-block prime filter, the
// singleton three-block certificate, and (when the group has an index-2
// subgroup) the index-2 Diophantine system.
inline FeasibilityVerdict prefilter(const SearchSpec& spec) {
  if (!spec.group) throw std::invalid_argument("prefilter: group is required");
  std::vector<long long> sizes(spec.sizes.begin(), spec.sizes.end());
  const HpdfCheck adm = is_admissible_hpdf(sizes);
  if (!adm.verdict.admissible) return adm.verdict;
  std::sort(sizes.begin(), sizes.end(), std::greater<long long>());
  if (sizes.size() == 3) {
    const FeasibilityVerdict pf = prime_filter_three_block(sizes[0], sizes[1], sizes[2]);
    if (!pf.admissible) return pf;
    if (sizes[2] == 1) return singleton_three_block_certificate(adm.lambda);
  }
  if (!index2_subgroups(*spec.group).empty()) {
    return index2_partition_filter(sizes, adm.lambda);
  }
  return adm.verdict;
}

// Number of translation classes among the given families: two families are
// identified when one is a left translate {g*B_i} of the other.
inline long long count_translation_classes(const FiniteGroup& G,
                                           const std::vector<Family>& families) {
  std::set<std::vector<Block>> canon;
  for (const Family& fam : families) {
    std::vector<Block> best;
    for (int g = 0; g < G.order(); ++g) {
      std::vector<Block> moved;
      for (const Block& B : fam.blocks) {
        Block nb;
        nb.reserve(B.size());
        for (int x : B) nb.push_back(G.op(g, x));
        std::sort(nb.begin(), nb.end());
        moved.push_back(std::move(nb));
      }
      std::sort(moved.begin(), moved.end());
      if (best.empty() || moved < best) best = std::move(moved);
    }
    canon.insert(std::move(best));
  }
  return static_cast<long long>(canon.size());
}

inline long long count_translation_classes(const FiniteGroup& G, const SearchOutcome& outcome) {
  return count_translation_classes(G, outcome.families);
}

}  // namespace hpdf

#include "apekit/ter.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "apekit/error.hpp"
#include "apekit/parallel.hpp"

namespace apekit::ter {

EditCounts& EditCounts::operator+=(const EditCounts& o) {
  insertions += o.insertions;
  deletions += o.deletions;
  substitutions += o.substitutions;
  shifts += o.shifts;
  return *this;
}

char op_code(Op op) {
  switch (op) {
    case Op::match: return 'M';
    case Op::substitute: return 'S';
    case Op::insert: return 'I';
    case Op::remove: return 'D';
  }
  return '?';
}

std::vector<std::string> apply_shift(const std::vector<std::string>& tokens,
                                     const ShiftRecord& shift) {
  if (shift.length == 0 || shift.start + shift.length > tokens.size() ||
      shift.dest > tokens.size() - shift.length) {
    throw DataError("shift out of range");
  }
  std::vector<std::string> rest;
  rest.reserve(tokens.size());
  rest.insert(rest.end(), tokens.begin(), tokens.begin() + shift.start);
  rest.insert(rest.end(), tokens.begin() + shift.start + shift.length, tokens.end());
  std::vector<std::string> out(rest.begin(), rest.begin() + shift.dest);
  out.insert(out.end(), tokens.begin() + shift.start, tokens.begin() + shift.start + shift.length);
  out.insert(out.end(), rest.begin() + shift.dest, rest.end());
  return out;
}

std::vector<std::string> apply_edit_script(const std::vector<std::string>& hyp,
                                           const EditScript& script) {
  auto current = hyp;
  for (const auto& s : script.shifts) current = apply_shift(current, s);
  std::vector<std::string> out;
  std::size_t h = 0;
  for (const auto& op : script.ops) {
    switch (op.op) {
      case Op::match:
        if (h >= current.size() || current[h] != op.hyp_token) {
          throw DataError("edit script: match does not fit the hypothesis");
        }
        out.push_back(current[h++]);
        break;
      case Op::substitute:
        if (h >= current.size() || current[h] != op.hyp_token) {
          throw DataError("edit script: substitution does not fit the hypothesis");
        }
        ++h;
        out.push_back(op.ref_token);
        break;
      case Op::insert:
        if (h >= current.size() || current[h] != op.hyp_token) {
          throw DataError("edit script: insertion does not fit the hypothesis");
        }
        ++h;
        break;
      case Op::remove:
        out.push_back(op.ref_token);
        break;
    }
  }
  if (h != current.size()) throw DataError("edit script leaves hypothesis tokens unconsumed");
  return out;
}

namespace {

using Ids = std::vector<std::uint32_t>;

struct Trace {
  std::size_t cost = 0;
  std::vector<Op> ops;  // forward order
};

/// Levenshtein with backtrace; ties prefer match, substitution, deletion,
/// insertion in that order.
Trace align(const Ids& hyp, const Ids& ref) {
  const std::size_t n = hyp.size(), m = ref.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  Trace t;
  t.cost = at(n, m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && hyp[i - 1] == ref[j - 1] && at(i, j) == at(i - 1, j - 1)) {
      t.ops.push_back(Op::match);
      --i;
      --j;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      t.ops.push_back(Op::substitute);
      --i;
      --j;
    } else if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      t.ops.push_back(Op::remove);
      --j;
    } else {
      t.ops.push_back(Op::insert);
      --i;
    }
  }
  std::reverse(t.ops.begin(), t.ops.end());
  return t;
}

std::size_t distance_only(const Ids& hyp, const Ids& ref) {
  const std::size_t m = ref.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= hyp.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

struct Alignment {
  std::vector<long> ref_to_hyp;  // last hyp index consumed when each ref token is aligned
  std::vector<bool> hyp_err, ref_err;
};

Alignment to_alignment(const std::vector<Op>& ops, std::size_t n, std::size_t m) {
  Alignment a;
  a.ref_to_hyp.assign(m, -1);
  a.hyp_err.reserve(n);
  a.ref_err.reserve(m);
  long h = -1, r = -1;
  for (Op op : ops) {
    switch (op) {
      case Op::match:
      case Op::substitute:
        ++h;
        ++r;
        a.ref_to_hyp[r] = h;
        a.hyp_err.push_back(op == Op::substitute);
        a.ref_err.push_back(op == Op::substitute);
        break;
      case Op::insert:
        ++h;
        a.hyp_err.push_back(true);
        break;
      case Op::remove:
        ++r;
        a.ref_to_hyp[r] = h;
        a.ref_err.push_back(true);
        break;
    }
  }
  return a;
}

/// Moves words[start, start+length) per the candidate target convention of
/// the reference TER tool; returns the equivalent insertion index into the
/// span-removed sequence through `dest`.
Ids perform_shift(const Ids& w, std::size_t start, std::size_t length, std::size_t target,
                  std::size_t& dest) {
  Ids out;
  out.reserve(w.size());
  auto put = [&](std::size_t a, std::size_t b) { out.insert(out.end(), w.begin() + a, w.begin() + b); };
  if (target < start) {
    put(0, target);
    put(start, start + length);
    put(target, start);
    put(start + length, w.size());
    dest = target;
  } else if (target > start + length) {
    put(0, start);
    put(start + length, target);
    put(start, start + length);
    put(target, w.size());
    dest = target - length;
  } else {
    const std::size_t hi = std::min(w.size(), length + target);
    put(0, start);
    put(start + length, hi);
    put(start, start + length);
    put(hi, w.size());
    dest = hi - length;
  }
  return out;
}

struct Candidate {
  std::size_t delta = 0;
  std::size_t length = 0;
  std::size_t start = 0;
  std::size_t target = 0;
  std::size_t dest = 0;
  Ids shifted;

  /// Larger gain, then longer span, then earlier start, then earlier target.
  bool better_than(const Candidate& o) const {
    return std::make_tuple(delta, length, o.start, o.target) >
           std::make_tuple(o.delta, o.length, start, target);
  }
};

bool best_shift(const Ids& hyp, const Ids& ref, std::size_t current_cost, Candidate& best) {
  const auto trace = align(hyp, ref);
  const auto al = to_alignment(trace.ops, hyp.size(), ref.size());
  bool found = false;
  for (std::size_t sh = 0; sh < hyp.size(); ++sh) {
    for (std::size_t sr = 0; sr < ref.size(); ++sr) {
      const std::size_t dist = sh > sr ? sh - sr : sr - sh;
      if (dist > kMaxShiftDistance) continue;
      for (std::size_t len = 1; len <= kMaxShiftSize && sh + len <= hyp.size() &&
                                sr + len <= ref.size() && hyp[sh + len - 1] == ref[sr + len - 1];
           ++len) {
        bool hyp_wrong = false, ref_wrong = false;
        for (std::size_t k = 0; k < len; ++k) {
          hyp_wrong = hyp_wrong || al.hyp_err[sh + k];
          ref_wrong = ref_wrong || al.ref_err[sr + k];
        }
        if (!hyp_wrong || !ref_wrong) continue;
        const long anchor = al.ref_to_hyp[sr];
        if (anchor >= static_cast<long>(sh) && anchor < static_cast<long>(sh + len)) continue;
        long prev_target = -1;
        for (long offset = -1; offset < static_cast<long>(len); ++offset) {
          const long r = static_cast<long>(sr) + offset;
          const long target = r < 0 ? 0 : al.ref_to_hyp[r] + 1;
          if (target == prev_target) continue;
          prev_target = target;
          Candidate c;
          c.shifted = perform_shift(hyp, sh, len, static_cast<std::size_t>(target), c.dest);
          const std::size_t cost = distance_only(c.shifted, ref);
          if (cost >= current_cost) continue;
          c.delta = current_cost - cost;
          c.length = len;
          c.start = sh;
          c.target = static_cast<std::size_t>(target);
          if (!found || c.better_than(best)) {
            best = std::move(c);
            found = true;
          }
        }
      }
    }
  }
  return found;
}

std::pair<Ids, Ids> intern(const std::vector<std::string>& hyp,
                           const std::vector<std::string>& ref) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto id_of = [&](const std::string& s) {
    return ids.emplace(s, static_cast<std::uint32_t>(ids.size())).first->second;
  };
  Ids h, r;
  for (const auto& t : hyp) h.push_back(id_of(t));
  for (const auto& t : ref) r.push_back(id_of(t));
  return {h, r};
}

}  // namespace

std::size_t edit_distance(const std::vector<std::string>& hyp,
                          const std::vector<std::string>& ref) {
  const auto [h, r] = intern(hyp, ref);
  return distance_only(h, r);
}

TerResult ter_tokens(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  auto [h, r] = intern(hyp, ref);
  TerResult result;
  std::vector<std::string> words = hyp;
  std::size_t cost = distance_only(h, r);
  const std::size_t max_iterations = 2 * std::max<std::size_t>(ref.size(), 1);
  for (std::size_t iter = 0; iter < max_iterations && cost > 0; ++iter) {
    Candidate best;
    if (!best_shift(h, r, cost, best)) break;
    ShiftRecord rec{best.start, best.length, best.dest};
    words = apply_shift(words, rec);
    result.script.shifts.push_back(rec);
    h = std::move(best.shifted);
    cost -= best.delta;
  }

  const auto trace = align(h, r);
  auto& edits = result.score.edits;
  edits.shifts = result.script.shifts.size();
  std::size_t hi = 0, ri = 0;
  for (Op op : trace.ops) {
    AlignedOp a{op, {}, {}};
    switch (op) {
      case Op::match:
        a.hyp_token = words[hi++];
        a.ref_token = ref[ri++];
        break;
      case Op::substitute:
        a.hyp_token = words[hi++];
        a.ref_token = ref[ri++];
        ++edits.substitutions;
        break;
      case Op::insert:
        a.hyp_token = words[hi++];
        ++edits.insertions;
        break;
      case Op::remove:
        a.ref_token = ref[ri++];
        ++edits.deletions;
        break;
    }
    result.script.ops.push_back(std::move(a));
  }
  result.score.ref_len = ref.size();
  if (ref.empty()) {
    result.score.score = edits.total() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    result.score.score = static_cast<double>(edits.total()) / static_cast<double>(ref.size());
  }
  return result;
}

TerResult ter_sentence(const std::string& hyp, const std::string& ref,
                       const metrics::TokenizerConfig& tok) {
  const auto ref_tokens = metrics::tokenize(ref, tok);
  if (ref_tokens.empty()) throw DataError("TER: reference is empty after tokenization");
  return ter_tokens(metrics::tokenize(hyp, tok), ref_tokens);
}

std::vector<TerScore> ter_per_sentence(const std::vector<std::string>& hyps,
                                       const std::vector<std::string>& refs,
                                       const metrics::TokenizerConfig& tok, unsigned threads) {
  if (hyps.size() != refs.size()) {
    throw DataError("TER: " + std::to_string(hyps.size()) + " hypotheses but " +
                    std::to_string(refs.size()) + " references");
  }
  std::vector<TerScore> out(hyps.size());
  parallel_for(hyps.size(), threads, [&](std::size_t i) {
    out[i] = ter_tokens(metrics::tokenize(hyps[i], tok), metrics::tokenize(refs[i], tok)).score;
  });
  return out;
}

TerScore ter_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                    const metrics::TokenizerConfig& tok, unsigned threads) {
  TerScore total;
  for (const auto& s : ter_per_sentence(hyps, refs, tok, threads)) {
    total.edits += s.edits;
    total.ref_len += s.ref_len;
  }
  if (total.ref_len == 0) throw DataError("TER: all references are empty");
  total.score = static_cast<double>(total.edits.total()) / static_cast<double>(total.ref_len);
  return total;
}

}  // namespace apekit::ter

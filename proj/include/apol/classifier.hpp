#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "apol/analogy.hpp"
#include "apol/detail/bits.hpp"
#include "apol/galois.hpp"
#include "apol/truth_table.hpp"

namespace apol {

// -- datasets -----------------------------------------------------------------

/*! \brief Binary attribute vectors with a known or unknown label bit. */
struct dataset {
  struct record {
    std::vector<uint8_t> attributes;
    uint8_t label = 0;  // meaningful only when known
    bool known = false;
  };

  int dimension = 0;
  std::vector<record> records;

  std::vector<size_t> known_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < records.size(); ++i)
      if (records[i].known) out.push_back(i);
    return out;
  }
};

/*! \brief Parses the CSV dataset format: a header row whose final column is
 * `label`, then rows of 0/1 cells where `?` in the label column marks an
 * unknown label.  Errors carry the offending 1-based row and column.
 */
inline dataset load_dataset(std::string_view csv) {
  std::vector<std::vector<std::string>> rows;
  {
    std::istringstream lines{std::string(csv)};
    std::string line;
    while (std::getline(lines, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() && lines.eof()) break;
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream cs(line);
      while (std::getline(cs, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.push_back("");
      rows.push_back(std::move(cells));
    }
  }
  if (rows.empty()) throw parse_error("dataset is empty");
  const auto& header = rows.front();
  if (header.size() < 2) throw parse_error("dataset needs attribute columns and a label column", 1);
  if (header.back() != "label")
    throw parse_error("last header column must be `label`", 1, static_cast<int>(header.size()));

  dataset ds;
  ds.dimension = static_cast<int>(header.size()) - 1;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != header.size())
      throw parse_error("row width differs from header", static_cast<int>(r + 1));
    dataset::record rec;
    rec.attributes.reserve(static_cast<size_t>(ds.dimension));
    for (int c = 0; c < ds.dimension; ++c) {
      const std::string& cell = cells[static_cast<size_t>(c)];
      if (cell == "0")
        rec.attributes.push_back(0);
      else if (cell == "1")
        rec.attributes.push_back(1);
      else
        throw parse_error("attribute cell must be 0 or 1", static_cast<int>(r + 1), c + 1);
    }
    const std::string& label = cells.back();
    if (label == "?") {
      rec.known = false;
    } else if (label == "0" || label == "1") {
      rec.known = true;
      rec.label = label == "1";
    } else {
      throw parse_error("label cell must be 0, 1 or ?", static_cast<int>(r + 1),
                        static_cast<int>(cells.size()));
    }
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

inline std::string format_dataset(const dataset& ds) {
  std::string out;
  for (int c = 1; c <= ds.dimension; ++c) {
    out += 'x';
    out += std::to_string(c);
    out += ',';
  }
  out += "label\n";
  for (const auto& rec : ds.records) {
    for (uint8_t a : rec.attributes) {
      out += a ? '1' : '0';
      out += ',';
    }
    out += rec.known ? (rec.label ? "1" : "0") : "?";
    out += '\n';
  }
  return out;
}

// -- analogy preservation ------------------------------------------------------

/*! \brief A concrete failure of analogy preservation: four input vectors,
 * componentwise analogical in the source model, whose image quadruple is
 * solvable-but-escaping in the target.
 */
struct ap_witness {
  std::vector<uint8_t> a, b, c, d;
  std::array<uint8_t, 4> image{};  // (f(a), f(b), f(c), f(d))
};

struct ap_check_result {
  bool preserved = true;
  std::optional<ap_witness> witness;
};

namespace detail {

inline ap_witness witness_from_columns(const truth_table& f, std::span<const uint16_t> columns,
                                       uint16_t image) {
  ap_witness w;
  int n = f.arity();
  w.a.resize(static_cast<size_t>(n));
  w.b.resize(static_cast<size_t>(n));
  w.c.resize(static_cast<size_t>(n));
  w.d.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    w.a[static_cast<size_t>(j)] = columns[static_cast<size_t>(j)] & 1;
    w.b[static_cast<size_t>(j)] = (columns[static_cast<size_t>(j)] >> 1) & 1;
    w.c[static_cast<size_t>(j)] = (columns[static_cast<size_t>(j)] >> 2) & 1;
    w.d[static_cast<size_t>(j)] = (columns[static_cast<size_t>(j)] >> 3) & 1;
  }
  for (int r = 0; r < 4; ++r) w.image[static_cast<size_t>(r)] = (image >> r) & 1;
  return w;
}

}  // namespace detail

/*! \brief Whether f maps source-analogical quadruples to target-analogical
 * ones whenever the image triple is solvable; i.e. membership in
 * Pol(src, dst-extended).
 */
inline ap_check_result ap_check(const truth_table& f, const analogy_model& src,
                                const analogy_model& dst) {
  constraint c = analogical_constraint(src, dst);
  auto v = find_violation(f, c);
  if (!v) return {};
  ap_check_result out;
  out.preserved = false;
  out.witness = detail::witness_from_columns(f, v->columns, v->image);
  return out;
}

// -- error measurement ----------------------------------------------------------

struct sampling {
  uint64_t seed = 0;
  uint64_t draws = 0;
};

/*! \brief Outcome of an error-rate measurement.
 *
 * The event space is the set of column selections (one source tuple per
 * attribute); a selection counts when the image triple (f(a), f(b), f(c)) is
 * solvable in the raw target model, and it is a violation when f(d) is not
 * among the solutions.  The rate is the exact rational violations/solvable.
 */
struct error_report {
  std::string function;  // `arity:hex` identity
  std::string src, dst;
  bool exact = true;
  uint64_t total_checked = 0;  // selections examined
  uint64_t solvable = 0;
  uint64_t violations = 0;
  bool degenerate = false;  // no solvable selection at all
  std::optional<sampling> sample;
  uint64_t affine_distance = 0;
  double epsilon = 0.0;
  std::optional<ap_witness> first_violation;

  double rate() const { return solvable == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(solvable); }
};

struct nearest_affine_result {
  truth_table function;
  uint64_t distance = 0;
  double epsilon = 0.0;
};

/*! \brief Closest affine function by table Hamming distance, ties broken by
 * least table code.
 *
 * Uses the Walsh-Hadamard transform, so the whole affine family is scored in
 * O(n 2^n) instead of 2^(n+1) table scans; works up to arity 20.
 */
inline nearest_affine_result nearest_affine(const truth_table& f) {
  int n = f.arity();
  if (n > 20) throw capability_error("nearest_affine supports arity <= 20");
  uint64_t points = f.size();

  // spectrum[u] = #agreements - #disagreements with the linear form u.x
  std::vector<int32_t> spectrum(points);
  for (uint64_t x = 0; x < points; ++x) spectrum[x] = f.get(x) ? -1 : 1;
  for (uint64_t step = 1; step < points; step <<= 1)
    for (uint64_t block = 0; block < points; block += step << 1)
      for (uint64_t k = block; k < block + step; ++k) {
        int32_t a = spectrum[k], b = spectrum[k + step];
        spectrum[k] = a + b;
        spectrum[k + step] = a - b;
      }

  auto affine_table = [&](uint64_t u, bool complement) {
    truth_table g(n);
    for (uint64_t x = 0; x < points; ++x) {
      bool bit = std::popcount(u & x) & 1;
      g.set(x, complement ? !bit : bit);
    }
    return g;
  };

  bool have = false;
  uint64_t best_distance = 0;
  truth_table best;
  for (uint64_t u = 0; u < points; ++u) {
    for (int complement = 0; complement < 2; ++complement) {
      int64_t w = spectrum[u];
      int64_t signed_points = static_cast<int64_t>(points);
      uint64_t dist = static_cast<uint64_t>(complement ? (signed_points + w) / 2
                                                       : (signed_points - w) / 2);
      if (!have || dist < best_distance) {
        have = true;
        best_distance = dist;
        best = affine_table(u, complement);
      } else if (dist == best_distance) {
        truth_table candidate = affine_table(u, complement);
        if (candidate < best) best = candidate;
      }
    }
  }
  return {best, best_distance, static_cast<double>(best_distance) / static_cast<double>(points)};
}

namespace detail {

struct rate_counters {
  uint64_t checked = 0;
  uint64_t solvable = 0;
  uint64_t violations = 0;
  uint64_t first_violation_index = UINT64_MAX;
  std::vector<uint16_t> first_violation_columns;
  uint16_t first_violation_image = 0;
};

//! Scores one column selection; the columns are source tuple codes, one per attribute.
inline void score_selection(const truth_table& f, const relation& dst_rel,
                            std::span<const uint16_t> columns, uint64_t index,
                            rate_counters& agg) {
  int n = f.arity();
  uint16_t image = 0;
  for (int r = 0; r < 4; ++r) {
    uint64_t point = 0;
    for (int j = 0; j < n; ++j)
      if ((columns[j] >> r) & 1) point |= uint64_t{1} << j;
    if (f.get(point)) image |= static_cast<uint16_t>(1u << r);
  }
  ++agg.checked;
  uint16_t prefix = image & 7;
  bool has0 = dst_rel.contains(prefix);
  bool has1 = dst_rel.contains(static_cast<uint16_t>(prefix | 8));
  if (!has0 && !has1) return;  // image triple unsolvable: not an event
  ++agg.solvable;
  bool fd = (image >> 3) & 1;
  if (fd ? !has1 : !has0) {
    ++agg.violations;
    if (index < agg.first_violation_index) {
      agg.first_violation_index = index;
      agg.first_violation_columns.assign(columns.begin(), columns.end());
      agg.first_violation_image = image;
    }
  }
}

}  // namespace detail

/*! \brief Exact or seeded-sample error rate of f under (src, dst).
 *
 * Exact mode enumerates all |src|^n column selections (arity capped at 4) and
 * parallelizes over selection blocks with exact integer reduction, so the
 * report is identical for any worker count.  Sampled mode derives draw i
 * entirely from (seed, i), which makes it reproducible and
 * partition-independent as well.
 */
inline error_report error_rate(const truth_table& f, const analogy_model& src,
                               const analogy_model& dst, std::optional<sampling> sample = {},
                               int workers = 0) {
  error_report report;
  report.function = f.serialize();
  report.src = src.name;
  report.dst = dst.name;
  report.exact = !sample.has_value();

  auto na = nearest_affine(f);
  report.affine_distance = na.distance;
  report.epsilon = na.epsilon;

  const auto tuples = src.rel.tuples();
  const int n = f.arity();
  const size_t k = tuples.size();

  if (!sample) {
    if (n > max_enum_arity)
      throw capability_error("exact error_rate requires arity <= 4");
    uint64_t total = 1;
    for (int j = 0; j < n; ++j) total *= k;
    if (k == 0) total = n == 0 ? 1 : 0;

    workers = detail::resolve_workers(workers);
    std::vector<detail::rate_counters> slices(static_cast<size_t>(workers));
    detail::parallel_slices(total, workers, [&](uint64_t begin, uint64_t end, int slot) {
      auto& agg = slices[static_cast<size_t>(slot)];
      std::vector<uint16_t> columns(static_cast<size_t>(n));
      for (uint64_t s = begin; s < end; ++s) {
        uint64_t key = s;
        for (int j = 0; j < n; ++j) {
          columns[static_cast<size_t>(j)] = tuples[key % k];
          key /= k;
        }
        detail::score_selection(f, dst.rel, columns, s, agg);
      }
    });
    detail::rate_counters agg;
    for (const auto& s : slices) {
      agg.checked += s.checked;
      agg.solvable += s.solvable;
      agg.violations += s.violations;
      if (s.first_violation_index < agg.first_violation_index) {
        agg.first_violation_index = s.first_violation_index;
        agg.first_violation_columns = s.first_violation_columns;
        agg.first_violation_image = s.first_violation_image;
      }
    }
    report.total_checked = agg.checked;
    report.solvable = agg.solvable;
    report.violations = agg.violations;
    report.degenerate = agg.solvable == 0;
    if (agg.first_violation_index != UINT64_MAX)
      report.first_violation = detail::witness_from_columns(
          f, agg.first_violation_columns, agg.first_violation_image);
    return report;
  }

  report.sample = sample;
  if (k == 0 && n > 0) {
    report.degenerate = true;
    return report;
  }
  detail::rate_counters agg;
  std::vector<uint16_t> columns(static_cast<size_t>(n));
  for (uint64_t i = 0; i < sample->draws; ++i) {
    auto gen = detail::substream(sample->seed, i);
    for (int j = 0; j < n; ++j)
      columns[static_cast<size_t>(j)] = tuples[gen.next_below(k)];
    detail::score_selection(f, dst.rel, columns, i, agg);
  }
  report.total_checked = agg.checked;
  report.solvable = agg.solvable;
  report.violations = agg.violations;
  report.degenerate = agg.solvable == 0;
  if (agg.first_violation_index != UINT64_MAX)
    report.first_violation = detail::witness_from_columns(f, agg.first_violation_columns,
                                                          agg.first_violation_image);
  return report;
}

// -- analogical inference ---------------------------------------------------------

enum class vote_strategy { first_hit, majority };

/*! \brief Result of one analogical-inference prediction.
 *
 * Abstention (no applicable triple) and majority ties are first-class
 * outcomes, distinct from any label.
 */
struct prediction {
  enum class outcome { label, abstain, tie };

  outcome kind = outcome::abstain;
  uint8_t label = 0;
  uint64_t applicable_triples = 0;
  std::array<uint64_t, 2> votes{0, 0};
  std::optional<std::array<size_t, 3>> first_triple;  // known-record indices
};

/*! \brief Predicts the label of `query` by scanning ordered triples (a, b, c)
 * of known records with src holding componentwise on (a, b, c, query) and the
 * label equation solvable in dst.
 *
 * All attributes must participate (the strict inference form).  `first_hit`
 * returns the first (triple, solution) in scan order with solutions ordered
 * 0 before 1; `majority` counts one vote per (triple, solution) pair.
 */
inline prediction aip_predict(const dataset& ds, std::span<const uint8_t> query,
                              const analogy_model& src, const analogy_model& dst,
                              vote_strategy strategy) {
  if (static_cast<int>(query.size()) != ds.dimension)
    throw input_error("aip_predict: query dimension mismatch");
  auto known = ds.known_indices();
  prediction out;

  auto columnwise_in_src = [&](const dataset::record& a, const dataset::record& b,
                               const dataset::record& c) {
    for (int i = 0; i < ds.dimension; ++i) {
      size_t ii = static_cast<size_t>(i);
      uint16_t column = static_cast<uint16_t>(
          (a.attributes[ii]) | (b.attributes[ii] << 1) | (c.attributes[ii] << 2) |
          (query[ii] << 3));
      if (!src.rel.contains(column)) return false;
    }
    return true;
  };

  for (size_t i : known)
    for (size_t j : known)
      for (size_t l : known) {
        const auto& a = ds.records[i];
        const auto& b = ds.records[j];
        const auto& c = ds.records[l];
        if (!columnwise_in_src(a, b, c)) continue;
        auto sols = solutions(dst.rel, a.label, b.label, c.label);
        if (sols.empty()) continue;
        ++out.applicable_triples;
        if (!out.first_triple) out.first_triple = {i, j, l};
        for (uint8_t s : sols) ++out.votes[s];
        if (strategy == vote_strategy::first_hit) {
          out.kind = prediction::outcome::label;
          out.label = sols.front();
          return out;
        }
      }

  if (out.applicable_triples == 0) {
    out.kind = prediction::outcome::abstain;
    return out;
  }
  if (out.votes[0] == out.votes[1]) {
    out.kind = prediction::outcome::tie;
    return out;
  }
  out.kind = prediction::outcome::label;
  out.label = out.votes[1] > out.votes[0];
  return out;
}

}  // namespace apol

// Copyright 2026 The mergecode Authors
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

#pragma once

// Source distributions: validation, canonical ordering and ingestion.
//
// Every solver in this library works on the canonical form: probabilities
// sorted non-increasing, strictly positive, summing to one. `perm` keeps the
// way back to the caller's symbol order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mergecode/error.hpp"

namespace mergecode {

// Sums inside 1 +- this are renormalized without raising the warning flag.
inline constexpr double kSilentRenormalization = 1e-6;
// Sums this close to 1 are rounding noise and are left alone, which keeps
// canonicalize idempotent.
inline constexpr double kNormalizedSlack = 1e-13;

struct ProbabilityVector {
  std::vector<double> probs;         // canonical order, non-increasing
  int radix = 2;
  std::vector<std::size_t> perm;     // canonical index -> original index
  std::vector<std::string> labels;   // canonical order; empty if unlabeled
  bool renormalized = false;         // input sum was far from 1
  std::vector<std::string> dropped;  // zero-mass symbols removed on input

  std::size_t size() const noexcept { return probs.size(); }
  double largest() const { return probs.front(); }
  double smallest() const { return probs.back(); }

  /// Label of canonical symbol `i`, falling back to its original index.
  std::string label(std::size_t i) const {
    if (!labels.empty()) return labels[i];
    return std::to_string(perm[i]);
  }

  /// Scatter values given in canonical order back to the original symbol
  /// order. Positions of dropped symbols are left value-initialized.
  template <class T>
  std::vector<T> to_original(std::span<const T> canonical) const {
    if (canonical.size() != probs.size()) {
      throw Error(Errc::SizeMismatch, "to_original: size mismatch");
    }
    std::size_t extent = 0;
    for (std::size_t idx : perm) extent = std::max(extent, idx + 1);
    std::vector<T> out(extent);
    for (std::size_t i = 0; i < canonical.size(); ++i) out[perm[i]] = canonical[i];
    return out;
  }
};

struct CanonicalizeOptions {
  bool drop_zeros = false;
};

namespace detail {

inline void require_radix(int radix) {
  if (radix < 2) {
    throw Error(Errc::BadRadix, "radix must be at least 2, got " + std::to_string(radix));
  }
}

inline std::string symbol_name(std::span<const std::string> labels, std::size_t i) {
  return labels.empty() ? std::to_string(i) : labels[i];
}

}  // namespace detail

/// Validate `raw` and bring it into canonical form. Equal probabilities keep
/// their input order (stable sort).
inline ProbabilityVector canonicalize(std::span<const double> raw, int radix,
                                      std::span<const std::string> labels = {},
                                      CanonicalizeOptions options = {}) {
  detail::require_radix(radix);
  if (raw.empty()) throw Error(Errc::EmptyInput, "probability vector is empty");
  if (!labels.empty() && labels.size() != raw.size()) {
    throw Error(Errc::SizeMismatch, "labels must be parallel to probabilities");
  }

  ProbabilityVector out;
  out.radix = radix;
  std::vector<std::size_t> kept;
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(Errc::NotNormalizable,
                  "entry " + std::to_string(i) + " is negative or not finite");
    }
    if (v == 0.0) {
      if (!options.drop_zeros) {
        throw Error(Errc::ZeroProbability,
                    "symbol " + detail::symbol_name(labels, i) + " has zero probability");
      }
      out.dropped.push_back(detail::symbol_name(labels, i));
      continue;
    }
    kept.push_back(i);
    total += v;
  }
  if (kept.empty() || !(total > 0.0) || !std::isfinite(total)) {
    throw Error(Errc::NotNormalizable, "probabilities do not sum to a positive value");
  }
  out.renormalized = std::abs(total - 1.0) > kSilentRenormalization;
  const bool rescale = std::abs(total - 1.0) > kNormalizedSlack;

  std::stable_sort(kept.begin(), kept.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
  out.perm = kept;
  out.probs.reserve(kept.size());
  for (std::size_t idx : kept) {
    out.probs.push_back(rescale ? raw[idx] / total : raw[idx]);
    if (!labels.empty()) out.labels.push_back(labels[idx]);
  }
  return out;
}

inline ProbabilityVector canonicalize(std::initializer_list<double> raw, int radix) {
  return canonicalize(std::span<const double>(raw.begin(), raw.size()), radix);
}

using SymbolCount = std::pair<std::string, std::uint64_t>;

/// Empirical distribution from symbol counts. Zero counts are dropped and
/// listed in `dropped`; `perm` indexes into `counts`.
inline ProbabilityVector from_counts(std::span<const SymbolCount> counts, int radix) {
  detail::require_radix(radix);
  std::uint64_t total = 0;
  for (const auto& [label, count] : counts) total += count;
  if (total == 0) throw Error(Errc::AllZeroCounts, "all symbol counts are zero");

  std::vector<double> raw;
  std::vector<std::string> labels;
  raw.reserve(counts.size());
  for (const auto& [label, count] : counts) {
    raw.push_back(static_cast<double>(count) / static_cast<double>(total));
    labels.push_back(label);
  }
  return canonicalize(raw, radix, labels, {.drop_zeros = true});
}

struct LoadOptions {
  std::optional<int> radix;  // overrides the document's radix
  bool drop_zeros = false;
};

/// Parse a distribution document:
///   {"radix": 2, "probabilities": [..], "labels": [..]}   or
///   {"radix": 2, "counts": {"a": 9, ...}}
/// Radix defaults to 2 when absent.
inline ProbabilityVector load_distribution(std::string_view document, LoadOptions options = {}) {
  using json = nlohmann::ordered_json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  auto fail = [](const std::string& what) -> void { throw Error(Errc::ParseError, what); };
  if (!doc.is_object()) fail("distribution document must be a JSON object");

  int radix = 2;
  if (auto it = doc.find("radix"); it != doc.end()) {
    if (!it->is_number_integer()) fail("field 'radix': expected an integer");
    radix = it->get<int>();
  }
  if (options.radix) radix = *options.radix;

  const bool has_probs = doc.contains("probabilities");
  const bool has_counts = doc.contains("counts");
  if (has_probs == has_counts) fail("exactly one of 'probabilities' or 'counts' is required");

  if (has_counts) {
    const auto& counts = doc["counts"];
    if (!counts.is_object()) fail("field 'counts': expected an object of label -> count");
    std::vector<SymbolCount> entries;
    for (const auto& [label, value] : counts.items()) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        fail("field 'counts." + label + "': expected a non-negative integer");
      }
      entries.emplace_back(label, value.get<std::uint64_t>());
    }
    if (entries.empty()) throw Error(Errc::EmptyInput, "field 'counts' is empty");
    return from_counts(entries, radix);
  }

  const auto& probs = doc["probabilities"];
  if (!probs.is_array()) fail("field 'probabilities': expected an array of numbers");
  std::vector<double> raw;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!probs[i].is_number()) {
      fail("field 'probabilities[" + std::to_string(i) + "]': expected a number");
    }
    raw.push_back(probs[i].get<double>());
  }
  std::vector<std::string> labels;
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array() || it->size() != raw.size()) {
      fail("field 'labels': expected an array parallel to 'probabilities'");
    }
    for (const auto& l : *it) {
      if (!l.is_string()) fail("field 'labels': entries must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return canonicalize(raw, radix, labels, {.drop_zeros = options.drop_zeros});
}

}  // namespace mergecode

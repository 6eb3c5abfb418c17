#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

/// Weakly decreasing tuple of nonnegative integers (lambda_1 >= ... >= lambda_n >= 0).
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }
  Partition(std::initializer_list<int> parts) : parts_(parts) { validate(); }

  static Partition zero(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  /// Parses "l1,l2,...".
  static Partition parse(const std::string& text)
  {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw ConfigurationError("invalid partition entry '" + item + "' in '" + text + "'");
      }
      if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
        throw ConfigurationError("invalid partition entry '" + item + "' in '" + text + "'");
      parts.push_back(v);
    }
    if (parts.empty())
      throw ConfigurationError("empty partition");
    return Partition(std::move(parts));
  }

  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](int j) const { return parts_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& parts() const { return parts_; }

  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  /// Staggered 1D node index lambda_j + n - 1 - j for 0-based j.
  int staggered(int j) const { return parts_[static_cast<std::size_t>(j)] + length() - 1 - j; }

  std::string to_string() const
  {
    std::string s;
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      if (j)
        s += ',';
      s += std::to_string(parts_[j]);
    }
    return s;
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

private:
  void validate() const
  {
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      if (parts_[j] < 0)
        throw ConfigurationError("partition parts must be nonnegative");
      if (j > 0 && parts_[j] > parts_[j - 1])
        throw ConfigurationError("partition parts must be weakly decreasing");
    }
  }

  std::vector<int> parts_;
};

/// binomial(n, k), saturating at the maximum of std::uint64_t.
inline std::uint64_t binomial(int n, int k)
{
  if (k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

inline constexpr std::uint64_t kDefaultPartitionCap = 10'000'000;

/// Streams Lambda^(m,n) = {m >= l_1 >= ... >= l_n >= 0} in descending lexicographic order.
class PartitionEnumerator {
public:
  PartitionEnumerator(int m, int n) : parts_(checked_length(m, n), m) {}

  bool done() const { return done_; }
  Partition current() const { return Partition(parts_); }

  void advance()
  {
    int j = static_cast<int>(parts_.size()) - 1;
    while (j >= 0 && parts_[static_cast<std::size_t>(j)] == 0)
      --j;
    if (j < 0) {
      done_ = true;
      return;
    }
    const int v = --parts_[static_cast<std::size_t>(j)];
    for (std::size_t k = static_cast<std::size_t>(j) + 1; k < parts_.size(); ++k)
      parts_[k] = v;
  }

private:
  static std::size_t checked_length(int m, int n)
  {
    if (m < 0 || n < 1)
      throw ConfigurationError("partition enumeration needs m >= 0 and n >= 1");
    return static_cast<std::size_t>(n);
  }

  std::vector<int> parts_;
  bool done_ = false;
};

inline std::vector<Partition> enumerate_partitions(int m, int n, std::uint64_t cap = kDefaultPartitionCap)
{
  if (m < 0 || n < 1)
    throw ConfigurationError("partition enumeration needs m >= 0 and n >= 1");
  const std::uint64_t count = binomial(m + n, n);
  if (count > cap)
    throw ConfigurationError("binomial(" + std::to_string(m + n) + "," + std::to_string(n) + ") = " +
                             std::to_string(count) + " partitions exceeds the cap of " +
                             std::to_string(cap));
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(count));
  for (PartitionEnumerator e(m, n); !e.done(); e.advance())
    out.push_back(e.current());
  return out;
}

} // namespace bsc

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace gaexplain {

/// Fixed-length genome of 0/1 values.
class Bitstring {
 public:
  Bitstring() = default;
  /// n zero bits.
  explicit Bitstring(std::size_t n) : bits_(n, 0) {}
  /// Copies `bits`; throws InvalidArgument on any value other than 0 or 1.
  explicit Bitstring(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1' characters.
  static Bitstring parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);
  Bitstring flipped(std::size_t i) const;

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t count_ones() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

enum class FitnessSource { Unset, True, Surrogate };

class Individual {
 public:
  Individual() = default;
  explicit Individual(Bitstring genome) : genome_(std::move(genome)) {}

  const Bitstring& genome() const noexcept { return genome_; }
  Bitstring& genome() noexcept { return genome_; }

  bool has_fitness() const noexcept { return source_ != FitnessSource::Unset; }
  /// Throws InvalidArgument when unset.
  double fitness() const;
  FitnessSource source() const noexcept { return source_; }

  void set_fitness(double value, FitnessSource source);
  void clear_fitness() noexcept {
    fitness_ = 0.0;
    source_ = FitnessSource::Unset;
  }

 private:
  Bitstring genome_;
  double fitness_ = 0.0;
  FitnessSource source_ = FitnessSource::Unset;
};

struct Population {
  std::vector<Individual> members;
  std::size_t generation = 0;

  std::size_t size() const noexcept { return members.size(); }
  /// Genome length shared by all members; throws on mixed lengths.
  std::size_t genome_length() const;
};

/// Independent fair bits, one rng draw per bit.
Bitstring random_bitstring(RngStream& rng, std::size_t n);

struct ArchiveRecord {
  Bitstring genome;
  double fitness;
  std::size_t generation;
};

/// Rows selected from an archive, in insertion order.
struct TrainingSet {
  std::vector<Bitstring> inputs;
  std::vector<double> targets;

  std::size_t rows() const noexcept { return inputs.size(); }
  std::size_t features() const noexcept { return inputs.empty() ? 0 : inputs.front().size(); }
};

/// Append-only log of true fitness evaluations.
class EvaluationArchive {
 public:
  /// Generations must be non-decreasing across appends.
  void append(Bitstring genome, double fitness, std::size_t generation);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  std::span<const ArchiveRecord> records() const noexcept { return records_; }

  /// Highest generation index recorded, if any.
  std::optional<std::size_t> last_generation() const noexcept;

  /// Records with generation in [lo, hi]. Throws InvalidArgument when lo > hi
  /// and EmptyTrainingSet when nothing matches.
  TrainingSet training_view(std::size_t lo, std::size_t hi) const;

 private:
  std::vector<ArchiveRecord> records_;
};

}  // namespace gaexplain

#include "core.hpp"

#include <algorithm>

#include "errors.hpp"

namespace gaexplain {

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) {
      throw InvalidArgument("bit " + std::to_string(i) + " is not 0 or 1");
    }
  }
}

Bitstring Bitstring::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InvalidArgument("bitstring contains '" + std::string(1, c) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Bitstring(std::move(bits));
}

bool Bitstring::at(std::size_t i) const {
  if (i >= bits_.size()) throw InvalidArgument("bit index out of range");
  return bits_[i] != 0;
}

void Bitstring::set(std::size_t i, bool value) {
  if (i >= bits_.size()) throw InvalidArgument("bit index out of range");
  bits_[i] = value ? 1 : 0;
}

void Bitstring::flip(std::size_t i) {
  if (i >= bits_.size()) throw InvalidArgument("bit index out of range");
  bits_[i] ^= 1;
}

Bitstring Bitstring::flipped(std::size_t i) const {
  Bitstring copy = *this;
  copy.flip(i);
  return copy;
}

std::size_t Bitstring::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string Bitstring::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

double Individual::fitness() const {
  if (source_ == FitnessSource::Unset) throw InvalidArgument("individual has no fitness");
  return fitness_;
}

void Individual::set_fitness(double value, FitnessSource source) {
  if (source == FitnessSource::Unset) throw InvalidArgument("fitness source must be set");
  fitness_ = value;
  source_ = source;
}

std::size_t Population::genome_length() const {
  if (members.empty()) return 0;
  const std::size_t n = members.front().genome().size();
  for (const auto& m : members) {
    if (m.genome().size() != n) throw InvalidArgument("population has mixed genome lengths");
  }
  return n;
}

Bitstring random_bitstring(RngStream& rng, std::size_t n) {
  if (n == 0) throw InvalidArgument("bitstring length must be positive");
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.bit() ? 1 : 0;
  return Bitstring(std::move(bits));
}

void EvaluationArchive::append(Bitstring genome, double fitness, std::size_t generation) {
  if (!records_.empty() && generation < records_.back().generation) {
    throw InvalidArgument("archive generations must be non-decreasing");
  }
  records_.push_back({std::move(genome), fitness, generation});
}

std::optional<std::size_t> EvaluationArchive::last_generation() const noexcept {
  if (records_.empty()) return std::nullopt;
  return records_.back().generation;
}

TrainingSet EvaluationArchive::training_view(std::size_t lo, std::size_t hi) const {
  if (lo > hi) {
    throw InvalidArgument("training range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] is reversed");
  }
  TrainingSet view;
  for (const auto& r : records_) {
    if (r.generation >= lo && r.generation <= hi) {
      view.inputs.push_back(r.genome);
      view.targets.push_back(r.fitness);
    }
  }
  if (view.inputs.empty()) {
    throw EmptyTrainingSet("no archived evaluations in generations [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  return view;
}

}  // namespace gaexplain

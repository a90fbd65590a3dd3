#pragma once

#include <tropfan/fan.hpp>
#include <tropfan/ring.hpp>

#include <vector>

namespace tropfan {

/// A fan with a weight on each maximal face, read in a coefficient ring.
class WeightedFan {
 public:
  /// `weights` follows the order of fan.input_cones(). Each weight must be a
  /// nonzero element of the ring.
  WeightedFan(Fan fan, RingTag ring, const std::vector<Rational>& weights)
      : fan_(std::move(fan)), ring_(ring), weights_(fan_.size(), Rational(0)) {
    const auto& cones = fan_.input_cones();
    if (weights.size() != cones.size())
      throw InputError("expected " + std::to_string(cones.size()) + " weights, got " +
                       std::to_string(weights.size()));
    for (std::size_t i = 0; i < cones.size(); ++i) {
      const Rational w = ring_.element(weights[i]);
      if (!ring_.is_non_zero_divisor(w))
        throw InputError("weight " + std::to_string(i) + " is a zero divisor in " + ring_.to_string());
      weights_[cones[i]] = w;
    }
  }

  static WeightedFan constant(Fan fan, RingTag ring, const Rational& w = 1) {
    const std::size_t n = fan.input_cones().size();
    return WeightedFan(std::move(fan), ring, std::vector<Rational>(n, w));
  }

  const Fan& fan() const { return fan_; }
  const RingTag& ring() const { return ring_; }
  std::size_t dim() const { return fan_.dim(); }

  /// Weight of a maximal face as a ring element.
  const Rational& weight(FaceId alpha) const { return weights_.at(alpha); }

  /// Weights in the order of fan().input_cones().
  std::vector<Rational> input_weights() const {
    std::vector<Rational> out;
    for (FaceId id : fan_.input_cones()) out.push_back(weights_[id]);
    return out;
  }

  /// Integer representatives of the weights of the maximal faces (in
  /// maximal_faces() order). Over Q the weights are cleared of denominators by
  /// a common positive factor, which rescales every chain by a unit.
  std::vector<Integer> integral_weights() const {
    Integer l = 1;
    for (FaceId a : fan_.maximal_faces()) {
      const Integer den = weights_[a].get_den();
      l = l / gcd(l, den) * den;
    }
    std::vector<Integer> out;
    for (FaceId a : fan_.maximal_faces()) {
      const Rational v = weights_[a] * l;
      out.push_back(v.get_num());
    }
    return out;
  }

  WeightedFan with_ring(const RingTag& ring) const { return WeightedFan(fan_, ring, input_weights()); }

 private:
  Fan fan_;
  RingTag ring_;
  std::vector<Rational> weights_;  // indexed by face id; zero off the maximal faces
};

}  // namespace tropfan

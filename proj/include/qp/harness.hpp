#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qp/json_io.hpp"
#include "qp/pencil.hpp"

namespace qp {

/// Generator keyed by (seed, index): each instance of a campaign draws from
/// its own stream, so results do not depend on scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index);
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);

 private:
  std::mt19937_64 engine_;
};

struct GeneratorConstraints {
  /// Zero x0^2 coefficient and independent x0-linear parts, so e0 lies on X.
  bool has_rational_point = false;
  /// f omits x0, so (1:0) is a rational root of the determinant and the
  /// member f has rank n.
  bool rational_singular_member = false;
};

/// Rejection-samples integer forms with monomial coefficients in
/// [-coeff_bound, coeff_bound] until the pencil is smooth. Throws
/// PreconditionError unless 3 <= n <= 7 and GeneratorError after 10^4
/// consecutive rejections.
Pencil generate_smooth_pencil(std::size_t n, long coeff_bound, std::uint64_t seed,
                              const GeneratorConstraints& constraints = {}, std::uint64_t index = 0);

/// Registered theorem identifiers.
const std::vector<std::string>& theorem_ids();

struct CampaignSpec {
  std::string theorem_id;
  /// 0 picks the theorem's default (mordell-real cycles through 3..7).
  std::size_t n = 0;
  std::size_t samples = 10;
  long coeff_bound = 9;
  long height_bound = 50;
  /// Empty picks the theorem's default places.
  std::vector<Place> places;
  std::uint64_t seed = 1;
  /// Field size for ff-census (0 picks 5).
  unsigned q = 0;
};

struct InstanceOutcome {
  std::size_t index = 0;
  /// "witnessed", "not-found-within-bound", "skipped" or "refuted".
  std::string outcome;
  std::string reason;
  Json instance;  // the pencil or form
  Json witness;
  double seconds = 0;
};

struct VerificationReport {
  CampaignSpec spec;
  std::vector<InstanceOutcome> instances;
  std::size_t witnessed = 0;
  std::size_t not_found = 0;
  std::size_t skipped = 0;
  std::size_t refuted = 0;
  /// Whether every instance of a must-witness theorem was witnessed or
  /// skipped, and nothing was refuted.
  bool campaign_ok = true;
  bool must_witness = false;

  /// Schema-versioned document; all timings sit under "timings".
  Json to_json() const;
};

/// Theorems whose statement is unconditional existence over a local or
/// finite field: any non-skipped instance that is not witnessed fails.
bool is_must_witness(const std::string& theorem_id);

/// Runs a campaign with instances in parallel. Throws InputError for an
/// unknown theorem id or an invalid spec.
VerificationReport verify(const CampaignSpec& spec);

}  // namespace qp

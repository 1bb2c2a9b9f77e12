#pragma once

#include <stdexcept>
#include <string>

namespace balpack {

enum class Errc {
  empty_instance,
  non_positive_size,
  non_positive_capacity,
  precondition_violated,
  instance_too_large,
  capacity_too_small_for_object,
  trivial_instance,
  malformed_witness,
  sum_not_divisible,
  dimension_mismatch,
  unsupported_kind_parameter,
  invalid_input,
  internal_invariant,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::empty_instance: return "EmptyInstance";
    case Errc::non_positive_size: return "NonPositiveSize";
    case Errc::non_positive_capacity: return "NonPositiveCapacity";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::instance_too_large: return "InstanceTooLarge";
    case Errc::capacity_too_small_for_object: return "CapacityTooSmallForObject";
    case Errc::trivial_instance: return "TrivialInstance";
    case Errc::malformed_witness: return "MalformedWitness";
    case Errc::sum_not_divisible: return "SumNotDivisible";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::unsupported_kind_parameter: return "UnsupportedKindParameter";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::internal_invariant: return "InternalInvariant";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace balpack

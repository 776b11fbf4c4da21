#pragma once

#include <stdexcept>
#include <string>

namespace memdelay {

enum class ErrorCode {
  // kernel
  MassNotLessThanOne,
  NonPositiveMu0,
  DecayViolated,
  TailTooLarge,
  NegativeArgument,
  // schedule
  OffIntervalShorterThanDelay,
  NonPositiveLength,
  NonPositiveBound,
  BeyondSchedule,
  // scenario / dynamics
  InvalidScenario,
  InconsistentModeCount,
  BufferUnderfilled,
  NonFiniteState,
  KernelNotExponential,
  // certificates
  NotDecaying,
  ZeroInitialEnergy,
  IntervalTooShort,
  ShortDelayInapplicable,
  NotPeriodicLengths,
  NoContraction,
  ConstantsMissing,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MassNotLessThanOne: return "MassNotLessThanOne";
    case ErrorCode::NonPositiveMu0: return "NonPositiveMu0";
    case ErrorCode::DecayViolated: return "DecayViolated";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::OffIntervalShorterThanDelay: return "OffIntervalShorterThanDelay";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::NonPositiveBound: return "NonPositiveBound";
    case ErrorCode::BeyondSchedule: return "BeyondSchedule";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::InconsistentModeCount: return "InconsistentModeCount";
    case ErrorCode::BufferUnderfilled: return "BufferUnderfilled";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::KernelNotExponential: return "KernelNotExponential";
    case ErrorCode::NotDecaying: return "NotDecaying";
    case ErrorCode::ZeroInitialEnergy: return "ZeroInitialEnergy";
    case ErrorCode::IntervalTooShort: return "IntervalTooShort";
    case ErrorCode::ShortDelayInapplicable: return "ShortDelayInapplicable";
    case ErrorCode::NotPeriodicLengths: return "NotPeriodicLengths";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::ConstantsMissing: return "ConstantsMissing";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace memdelay

#ifndef TSFIT_ERRORS_HPP
#define TSFIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsfit {

// Base of every library error. `stage()` is filled in by the pipeline when an
// error crosses a stage boundary, so callers can still catch the concrete type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  const std::string& stage() const { return stage_; }
  void set_stage(const std::string& stage) {
    if (stage_.empty()) stage_ = stage;
  }

 private:
  std::string stage_;
};

// Bad files, bad CSV cells, bad configuration: exit code 1 territory.
class InputError : public Error {
 public:
  using Error::Error;
};

// Everything numerical/statistical: exit code 2 territory.
class NumericError : public Error {
 public:
  using Error::Error;
};

#define TSFIT_INPUT_ERROR(Name)          \
  class Name : public InputError {       \
   public:                               \
    using InputError::InputError;        \
  };

#define TSFIT_NUMERIC_ERROR(Name)        \
  class Name : public NumericError {     \
   public:                               \
    using NumericError::NumericError;    \
  };

TSFIT_INPUT_ERROR(FileNotFound)
TSFIT_INPUT_ERROR(ParseError)
TSFIT_INPUT_ERROR(NonNumericValue)
TSFIT_INPUT_ERROR(InvalidSpec)
TSFIT_INPUT_ERROR(InvalidSeries)

TSFIT_NUMERIC_ERROR(SeriesTooShort)
TSFIT_NUMERIC_ERROR(NothingToInvert)
TSFIT_NUMERIC_ERROR(DegenerateSplit)
TSFIT_NUMERIC_ERROR(ConstantSeries)
TSFIT_NUMERIC_ERROR(LagTooLarge)
TSFIT_NUMERIC_ERROR(NumericalDegeneracy)
TSFIT_NUMERIC_ERROR(SingularRegression)
TSFIT_NUMERIC_ERROR(NonStationaryParams)
TSFIT_NUMERIC_ERROR(NonInvertibleParams)
TSFIT_NUMERIC_ERROR(TooFewObservations)
TSFIT_NUMERIC_ERROR(OverflowGuard)
TSFIT_NUMERIC_ERROR(NonCountData)
TSFIT_NUMERIC_ERROR(DegenerateDf)
TSFIT_NUMERIC_ERROR(LengthMismatch)
TSFIT_NUMERIC_ERROR(EmptyInput)
TSFIT_NUMERIC_ERROR(IndexOutOfRange)
TSFIT_NUMERIC_ERROR(IoError)

#undef TSFIT_INPUT_ERROR
#undef TSFIT_NUMERIC_ERROR

}  // namespace tsfit

#endif  // TSFIT_ERRORS_HPP

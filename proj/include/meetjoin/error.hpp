#pragma once

#include <stdexcept>
#include <string>

namespace meetjoin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error { using Error::Error; };
class CycleError : public Error { using Error::Error; };
class NoMeetError : public Error { using Error::Error; };
class NotClosedError : public Error { using Error::Error; };
class NotSupersetError : public Error { using Error::Error; };
class MissingValueError : public Error { using Error::Error; };
class DuplicateError : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };
class ConvergenceError : public Error { using Error::Error; };
class MonotonicityError : public Error { using Error::Error; };
class HypothesisError : public Error { using Error::Error; };
class SupportError : public Error { using Error::Error; };
class CapacityError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

/// Raised when the four tree-set characterizations disagree. Always a bug.
class CharacterizationMismatch : public Error { using Error::Error; };

/// Raised when two independent computation routes disagree. Always a bug.
class InternalConsistencyError : public Error { using Error::Error; };

} // namespace meetjoin

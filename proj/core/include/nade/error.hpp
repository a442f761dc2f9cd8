#ifndef NADE_ERROR_HPP_
#define NADE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nade {

/// Input violates a documented contract (bad record, overlapping spans,
/// unknown category, ...). Maps to CLI exit status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or stream could not be opened, read or written. Exit status 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nade

#endif  // NADE_ERROR_HPP_

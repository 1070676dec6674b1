#pragma once

#include <exception>

namespace resonance {

/// Keeps the first exception thrown by any iteration of a parallel loop so it
/// can be rethrown after the loop.
class FirstError {
 public:
  template <class F>
  void run(F&& body) noexcept {
    try {
      body();
    } catch (...) {
#pragma omp critical(resonance_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace resonance

#pragma once

#include <stdexcept>
#include <string>

namespace flock {

// Invalid or inconsistent run parameters (unknown key, bad value, violated bound).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure to read or write an artifact file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Agent placement failed; the initial box cannot hold the requested flock.
class InitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A non-finite value appeared while stepping the system.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& quantity, int agent, long long step)
      : std::runtime_error("non-finite " + quantity + " for agent " +
                           std::to_string(agent) + " at step " + std::to_string(step)),
        agent_(agent),
        step_(step) {}

  int agent() const { return agent_; }
  long long step() const { return step_; }

 private:
  int agent_;
  long long step_;
};

}  // namespace flock

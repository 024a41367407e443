#ifndef CRN_LOG_H_
#define CRN_LOG_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace crn::log {

using WarningHandler = std::function<void(std::string_view)>;

// Emits a warning through the installed handler (stderr by default).
void Warn(std::string_view message);

// Installs `handler` and returns the previous one. An empty handler restores
// the default stderr sink.
WarningHandler SetWarningHandler(WarningHandler handler);

// Collects warnings for the lifetime of the object. Not reentrant across
// threads; intended for tests and the fixture verifier.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace crn::log

#endif  // CRN_LOG_H_

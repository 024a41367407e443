#include "crn/log.h"

#include <iostream>
#include <mutex>
#include <utility>

namespace crn::log {
namespace {

std::mutex& HandlerMutex() {
  static std::mutex mu;
  return mu;
}

WarningHandler& Handler() {
  static WarningHandler handler;
  return handler;
}

}  // namespace

void Warn(std::string_view message) {
  std::lock_guard<std::mutex> lock(HandlerMutex());
  if (Handler()) {
    Handler()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningHandler SetWarningHandler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(HandlerMutex());
  return std::exchange(Handler(), std::move(handler));
}

ScopedWarningCapture::ScopedWarningCapture()
    : previous_(SetWarningHandler([this](std::string_view message) {
        messages_.emplace_back(message);
      })) {}

ScopedWarningCapture::~ScopedWarningCapture() {
  SetWarningHandler(std::move(previous_));
}

}  // namespace crn::log

#pragma once

#include <functional>
#include <string>

#include "ghsim/types.hpp"

namespace ghsim {

// One state transition in the structured event log.
struct EventRecord {
  Tick tick = 0;
  std::string agent;
  std::string from;
  std::string to;
  std::string detail;
};

using EventSink = std::function<void(const EventRecord&)>;

std::string event_to_jsonl(const EventRecord& ev);

}  // namespace ghsim

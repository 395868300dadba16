#include "revised/eventlog/types.hpp"

#include <algorithm>

namespace revised::eventlog {

Vocabulary Vocabulary::from_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names) {
    if (n == kEosName)
      throw DataError("activity name collides with the reserved EoS token");
  }
  names.push_back(kEosName);
  Vocabulary v;
  v.names_ = std::move(names);
  for (std::size_t i = 0; i < v.names_.size(); ++i) {
    v.ids_.emplace(v.names_[i], static_cast<ActivityId>(i));
  }
  return v;
}

}  // namespace revised::eventlog

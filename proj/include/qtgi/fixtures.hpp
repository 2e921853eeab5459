#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtgi/qtensor.hpp"

namespace qtgi {

/// One of the three published worked examples, inputs and printed output
/// transcribed verbatim (4-decimal values).
struct ReferenceExample {
  std::string name;        // "mp", "drazin", "inv-along"
  std::string provenance;  // emitted as comments into the fixture files
  std::vector<std::pair<std::string, QTensor>> inputs;
  std::string printed_name;
  QTensor printed;

  const QTensor& input(std::string_view key) const;
};

const std::vector<std::string>& reference_example_names();
/// Throws Error for an unknown name.
const ReferenceExample& reference_example(std::string_view name);

}  // namespace qtgi

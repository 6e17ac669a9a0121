#include "riemdr/errors.h"

#include <sstream>

namespace riemdr {
namespace {

std::string describe(const std::vector<std::size_t>& sizes) {
  std::ostringstream os;
  os << "neighbor graph is disconnected: " << sizes.size()
     << " components of sizes [";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) os << ", ";
    os << sizes[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

DisconnectedGraph::DisconnectedGraph(std::vector<std::size_t> component_sizes)
    : Error(describe(component_sizes)),
      component_sizes_(std::move(component_sizes)) {}

}  // namespace riemdr

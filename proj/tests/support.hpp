#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "clab/model.hpp"

namespace support {

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(CLAB_FIXTURE_DIR) + "/" + name + ".clm", std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline clab::CoalitionModel fixture(const std::string& name) {
  return clab::parse_model(read_fixture(name));
}

inline clab::CoalitionModel m1() { return fixture("upward_propagation"); }

}  // namespace support

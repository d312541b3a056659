#pragma once

#include <string>

#include "centagg/evaluation.hpp"

namespace centagg {

// Plain-text layout files:
//   line 1: "n t d m"
//   m lines: "client_id v[0] ... v[d-1]"
//   final line: "faulty id1 id2 ..." (just "faulty" when no faults are known)
std::string instance_to_string(const Layout& layout, const GroundTruth* truth);
void write_instance(const std::string& path, const Layout& layout, const GroundTruth* truth);
GeneratedInstance read_instance(const std::string& path);

}  // namespace centagg

#include "protnn/attributes.hpp"

namespace protnn {

int attribute_index(std::string_view name) {
  for (int i = 0; i < kNumAttributes; ++i)
    if (kAttributes[i].name == name) return i;
  return -1;
}

std::string attribute_name_list() {
  std::string out;
  for (int i = 0; i < kNumAttributes; ++i) {
    if (i) out += ',';
    out += kAttributes[i].name;
  }
  return out;
}

}  // namespace protnn

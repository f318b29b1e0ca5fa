// Registry of the structural/topological attributes computed per graph.
// The order is fixed: stored vectors index attributes by position, so new
// attributes may only be appended.

#ifndef PROTNN_ATTRIBUTES_HPP_
#define PROTNN_ATTRIBUTES_HPP_

#include <array>
#include <string>
#include <string_view>

namespace protnn {

inline constexpr int kNumAttributes = 18;

struct AttributeInfo {
  std::string_view name;   // short id used in file headers and CLI masks
  std::string_view descr;
};

inline constexpr std::array<AttributeInfo, kNumAttributes> kAttributes = {{
    {"A1", "number of nodes"},
    {"A2", "number of edges"},
    {"A3", "average degree"},
    {"A4", "density"},
    {"A5", "average clustering coefficient"},
    {"A6", "average effective eccentricity"},
    {"A7", "effective diameter"},
    {"A8", "effective radius"},
    {"A9", "average closeness centrality"},
    {"A10", "percentage of central nodes"},
    {"A11", "percentage of end points"},
    {"A12", "number of distinct eigenvalues"},
    {"A13", "spectral radius"},
    {"A14", "second largest eigenvalue"},
    {"A15", "energy"},
    {"A16", "neighborhood impurity"},
    {"A17", "link impurity"},
    {"A18", "label entropy"},
}};

// Index of an attribute id like "A15", or -1 if unknown.
int attribute_index(std::string_view name);

// "A1,A2,...,A18"
std::string attribute_name_list();

}  // namespace protnn

#endif

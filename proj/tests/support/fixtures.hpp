// Deterministic fixture builders shared by the unit and acceptance suites.

#ifndef PROTNN_TESTS_FIXTURES_HPP_
#define PROTNN_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "protnn/descriptors.hpp"
#include "protnn/graph.hpp"
#include "protnn/pdb.hpp"

namespace protnn::testing {

// Self-deleting scratch directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

void write_file(const std::string& path, const std::string& content);

// One PDB ATOM line with exact fixed columns.
std::string pdb_atom_line(int serial, const std::string& atom_name,
                          char altloc, const std::string& resname, char chain,
                          int seq, char icode, double x, double y, double z);

struct ResidueSpec {
  std::string label;
  char chain = 'A';
  int seq = 0;
  double x = 0, y = 0, z = 0;
};

// CA-only PDB text for the given residues.
std::string pdb_text(const std::vector<ResidueSpec>& residues);

// Ideal alpha-helix backbone: consecutive CA spacing close to 3.8 A.
std::vector<ResidueSpec> helix_residues(int n, double origin_x = 0);

// Extended strand: CA spacing 3.8 A along x.
std::vector<ResidueSpec> strand_residues(int n, double origin_y = 0);

StructureRecord random_points_record(std::mt19937& rng, int n, double box,
                                     const std::string& id = "rand");

ProteinGraph random_graph(std::mt19937& rng, int n, double edge_prob,
                          int label_alphabet = 4,
                          const std::string& id = "g");

// Two tight clusters around opposite alternating patterns; separable under
// every distance measure, including the angle-based ones.
std::vector<FeatureVector> cluster_rows(std::mt19937& rng, int per_class,
                                        double sigma = 0.01);

// Six rows over {A,B}: attribute A1 separates the classes cleanly, A2..A17
// are constant, and A18 is adversarial noise that flips exactly two
// leave-one-out outcomes at k=1 until it is removed.
std::vector<FeatureVector> noise_fixture_rows();

}  // namespace protnn::testing

#endif

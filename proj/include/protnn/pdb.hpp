// PDB coordinate ingestion: extract one C-alpha position per residue from
// fixed-column ATOM records, plus the labeled-manifest loader used to feed
// whole datasets into the pipeline.

#ifndef PROTNN_PDB_HPP_
#define PROTNN_PDB_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "protnn/error.hpp"

namespace protnn {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

struct Residue {
  std::string label;       // 3-letter residue code, uppercase, as in the file
  char chain_id = ' ';
  int seq_number = 0;
  char insertion_code = ' ';
  Vec3 ca_position;        // angstroms

  bool same_position(const Residue& o) const {
    return chain_id == o.chain_id && seq_number == o.seq_number &&
           insertion_code == o.insertion_code;
  }
};

struct ParseStats {
  int atom_records = 0;       // ATOM lines seen in the selected model
  int hetatm_records = 0;     // HETATM lines skipped
  int altloc_skipped = 0;     // ATOM lines dropped by the altloc rule
  int models_skipped = 0;     // MODEL blocks after the first
  int residues_without_ca = 0;
};

struct StructureRecord {
  std::string structure_id;
  std::vector<Residue> residues;  // file order, one per residue with a CA
  std::string source_path;
  ParseStats stats;
};

struct IngestOptions {
  // Overrides the id derived from the filename stem when non-empty.
  std::string id_override;
};

// Parses ATOM records of the first model; keeps altloc ' ' or 'A'; skips
// HETATM. One Residue per (chain, seq number, insertion code) with a CA atom.
// Throws: file_not_found, malformed_record (with line number), no_ca_atoms.
StructureRecord parse_pdb_file(const std::string& path,
                               const IngestOptions& options = {});

// Same rules applied to an already-loaded PDB text (used by tests and for
// in-memory fixtures). `id` becomes the structure_id unless overridden.
StructureRecord parse_pdb_text(const std::string& text, const std::string& id,
                               const IngestOptions& options = {});

struct ManifestEntry {
  std::string path;   // resolved relative to the manifest's directory
  std::string label;
};

// CSV with header `path,label`. Paths are joined with the manifest directory
// but not checked for existence; a bad path surfaces later at parse time.
// Throws: file_not_found, missing_column, duplicate_path, empty_manifest.
std::vector<ManifestEntry> load_manifest(const std::string& path);

// Debug dump of a StructureRecord and its inverse. Round-trips residues
// exactly (coordinates use 17 significant digits).
void dump_record(const StructureRecord& rec, std::ostream& out);
StructureRecord read_record_dump(std::istream& in);

}  // namespace protnn

#endif

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "homent/critical.hpp"
#include "homent/lattice.hpp"
#include "homent/molecule.hpp"
#include "homent/profile.hpp"

namespace homent {

// Round-trippable double formatting: %.17g with "-inf"/"inf" sentinels and
// a '.' decimal point regardless of locale.  All CSV output funnels through
// this so identical runs produce identical bytes.
std::string format_double(double v);

// Window files: a "d=<dim>" header line, then one point per line as
// whitespace-separated integers.  '#' starts a comment.
LatticeWindow read_window(std::istream& in);
LatticeWindow load_window(const std::string& path);
void write_window(const LatticeWindow& w, std::ostream& out);
void save_window(const LatticeWindow& w, const std::string& path);

// Molecule files: a "m=<dim> B=<rank>" header, then one basis class per
// line as "d=<int> v=<p/q>" (v may also be a bare integer).
MoleculeSpec read_molecule(std::istream& in);
MoleculeSpec load_molecule(const std::string& path);
void write_molecule(const MoleculeSpec& spec, std::ostream& out);
void save_molecule(const MoleculeSpec& spec, const std::string& path);

// Resolves a builtin alias ("s1", "torus") or falls back to loading a file.
MoleculeSpec resolve_molecule(const std::string& name_or_path);

// CSV emitters.  Headers included; rows end with '\n'.
void write_profile_csv(const EntropyProfile& profile, std::ostream& out);
void write_points_csv(const std::vector<CriticalPoint>& points, std::ostream& out);
void write_spectrum_csv(const SpectrumHistogram& hist, std::ostream& out);

}  // namespace homent

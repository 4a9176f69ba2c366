#pragma once

#include "chemiq/molgraph.hpp"

#include <string>
#include <vector>

namespace chemiq {

// One accepted corpus molecule. `mol` is stored in aromatic-normalized form
// and `canonical` is its canonical SMILES, so equal structures collapse to a
// single entry no matter how the input file spelled them.
struct CorpusEntry {
    std::string id;
    Molecule mol;
    std::string canonical;
    int heavy = 0;
    double weight = 0.0;
};

struct CorpusStats {
    int lines = 0;
    int parse_failures = 0;
    int filter_rejections = 0;
    int duplicates = 0;
};

struct Corpus {
    std::vector<CorpusEntry> entries;
    CorpusStats stats;
};

struct CorpusOptions {
    int max_heavy = 30;
    // Optional file of ring-system SMILES, one per line. When set, a molecule
    // is kept only if every ring system it contains appears in the list.
    std::string ring_whitelist_path;
};

// Reads a corpus file with one record per line: a SMILES string optionally
// followed by whitespace and an identifier. Lines that fail to parse or fail
// the structural filters are counted in the stats rather than aborting the
// load. Throws std::runtime_error if the file cannot be read or if nothing
// survives filtering.
Corpus load_corpus(const std::string& path, const CorpusOptions& options = {});

// Partitions entry indices into `bins` equal-width molecular weight bins
// spanning [min, max] over the corpus. A weight landing exactly on an interior
// boundary goes to the higher bin; the maximum stays in the last bin.
std::vector<std::vector<int>> bin_by_weight(const Corpus& corpus, int bins);

struct H1Signal {
    double shift = 0.0;
    std::string multiplicity;
    std::vector<double> js;
    int integration = 0;
};

struct C13Signal {
    double shift = 0.0;
    int count = 1;
    std::string multiplicity = "s";
};

struct Peak2D {
    double x = 0.0;
    double y = 0.0;
};

// A predicted spectra bundle for one molecule: 1D proton and carbon signal
// lists plus 2D correlation peak lists. Lists are normalized on load: 1D
// signals sort by descending shift, 2D peaks sort by descending partner
// shift (stable, so documents already in that order pass through unchanged),
// and COSY drops diagonal peaks and keeps one orientation of each pair.
struct SpectraSet {
    std::string smiles;
    std::string formula;
    std::vector<H1Signal> h1;
    std::vector<C13Signal> c13;
    std::vector<Peak2D> cosy;
    std::vector<Peak2D> hsqc;
    std::vector<Peak2D> hmbc;
};

SpectraSet parse_nmr_prediction(const std::string& json_text);
SpectraSet load_nmr_prediction_file(const std::string& path);

// Applies the list normalization described on SpectraSet. Exposed so tests
// can check it is idempotent.
void normalize_spectra(SpectraSet& spectra);

// One record of the hand-curated small-molecule set: the reference structure
// plus the 1H and 13C assignment lines kept verbatim as published.
struct SmallNmrEntry {
    std::string smiles;
    std::string formula;
    std::string h1_text;
    std::string c13_text;
};

// Reads blank-line-separated records of the form
//   SMILES: <smiles>
//   Formula: <hill formula>
//   1H NMR: <text>
//   13C NMR: <text>
// and checks the stated formula against the structure.
std::vector<SmallNmrEntry> load_small_nmr(const std::string& path);

}  // namespace chemiq

#pragma once

#include "gridmotif/motif.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gridmotif {

// Timestamp-free canonical text of a temporal motif, one bracketed group
// per frame: "[fridge:a:>,solar:c:<][fridge:b:>]". Inside a group the
// (leaf, symbol, direction) triples are sorted; '>' is center-to-leaf,
// '<' leaf-to-center. Absent channels are simply not listed. The
// characters \ : , [ ] are backslash-escaped in names and symbols.
using MotifSignature = std::string;

MotifSignature signature_of(const TemporalMotif& motif);

struct SignatureEdge {
    std::string leaf;
    char symbol = 0;
    FlowDirection direction = FlowDirection::CenterToLeaf;

    auto operator<=>(const SignatureEdge&) const = default;
};

// Inverse of signature_of: per-frame sorted edge content.
std::vector<std::vector<SignatureEdge>> decode_signature(std::string_view signature);

struct SignatureCounts {
    std::size_t delta = 0;
    std::size_t total_motifs = 0;
    std::map<MotifSignature, std::size_t> counts;

    bool operator==(const SignatureCounts&) const = default;
};

// Exact multiset count. The motif list may be sharded over `threads`
// workers; the merged result is identical to the single-threaded one.
// Throws MixedDelta when motifs differ in frame count.
SignatureCounts count_signatures(const std::vector<TemporalMotif>& motifs, unsigned threads = 1);

// Descending by count, ties by ascending signature. Throws InvalidArgument for k < 1.
std::vector<std::pair<MotifSignature, std::size_t>> top_k(const SignatureCounts& counts, std::size_t k);

// Brute-force reference: two motifs match when every frame carries the
// same set of (u, v, x) edges. Compares every motif against the first
// member of each group found so far.
bool same_edge_content(const TemporalMotif& a, const TemporalMotif& b);

struct OracleGroup {
    std::size_t representative = 0;
    std::size_t count = 0;
};
std::vector<OracleGroup> naive_count(const std::vector<TemporalMotif>& motifs);

// True when count_signatures agrees with the brute-force grouping.
bool verify_counts(const std::vector<TemporalMotif>& motifs, const SignatureCounts& counts);

}  // namespace gridmotif

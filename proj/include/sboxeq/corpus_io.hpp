#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sboxeq/sbox.hpp"

namespace sboxeq {

/// Text format: `#` comment lines, a header `n m` (optionally followed by `hex`),
/// then 2^n whitespace-separated entries. Entries are decimal unless the header
/// says hex or any entry contains a-f. Errors are InputError with "origin:line:col".
SBox parse_sbox_text(std::string_view text, std::string_view origin = "<input>");
SBox load_sbox_file(const std::filesystem::path& path);

/// Hex, 16 entries per line, optional comment lines first.
std::string format_sbox_text(const SBox& s, const std::vector<std::string>& comments = {});

struct CorpusEntry {
    std::string name;    // file stem
    std::string source;  // text after "# source:", empty if absent
    SBox sbox;
    unsigned degree = 0;
    unsigned sosm_rank = 0;
    bool is_permutation = false;
};

/// Loads one file and recomputes every tag from the table.
CorpusEntry load_corpus_entry(const std::filesystem::path& path);

struct CorpusRow {
    std::string name;
    std::optional<CorpusEntry> entry;
    std::string error;  // set when entry is empty
};

/// Every *.sbox file in dir, sorted by name. Bad files become error rows.
std::vector<CorpusRow> corpus_report(const std::filesystem::path& dir);

}  // namespace sboxeq

#include "sboxeq/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sboxeq/errors.hpp"
#include "sboxeq/sosm.hpp"

namespace sboxeq {

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

[[noreturn]] void fail(std::string_view origin, std::size_t line, std::size_t column, const std::string& msg) {
    std::ostringstream os;
    os << origin << ':' << line << ':' << column << ": " << msg;
    throw InputError(os.str());
}

std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') {
            std::vector<Token> toks;
            std::size_t i = first;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                if (i >= line.size()) break;
                const std::size_t start = i;
                while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                toks.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
            }
            if (!toks.empty()) lines.push_back(std::move(toks));
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

unsigned parse_width(const Token& t, std::string_view origin) {
    unsigned v = 0;
    if (t.text.empty() || t.text.size() > 3) fail(origin, t.line, t.column, "bad width '" + t.text + "'");
    for (char c : t.text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(origin, t.line, t.column, "bad width '" + t.text + "'");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    if (v < 1 || v > kMaxWidth) fail(origin, t.line, t.column, "width must be in [1, 16]");
    return v;
}

bool has_hex_letter(const std::string& s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) && std::isalpha(static_cast<unsigned char>(c)); });
}

}  // namespace

SBox parse_sbox_text(std::string_view text, std::string_view origin) {
    const auto lines = tokenize(text);
    if (lines.empty()) fail(origin, 1, 1, "missing header 'n m'");
    const auto& header = lines.front();
    if (header.size() < 2 || header.size() > 3) {
        fail(origin, header[0].line, header[0].column, "header must be 'n m' or 'n m hex'");
    }
    const unsigned n = parse_width(header[0], origin);
    const unsigned m = parse_width(header[1], origin);
    bool hex = false;
    if (header.size() == 3) {
        if (header[2].text != "hex") fail(origin, header[2].line, header[2].column, "unknown header flag '" + header[2].text + "'");
        hex = true;
    }
    std::vector<const Token*> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        for (const Token& t : lines[i]) entries.push_back(&t);
    }
    if (!hex) hex = std::any_of(entries.begin(), entries.end(), [](const Token* t) { return has_hex_letter(t->text); });

    const std::size_t expected = std::size_t{1} << n;
    if (entries.size() != expected) {
        const std::size_t line = entries.empty() ? header[0].line : entries.back()->line;
        fail(origin, line, 1,
             "expected 2^" + std::to_string(n) + " = " + std::to_string(expected) + " entries, found " +
                 std::to_string(entries.size()));
    }
    std::vector<std::uint16_t> table;
    table.reserve(expected);
    const Word limit = Word{1} << m;
    for (const Token* t : entries) {
        std::uint64_t v = 0;
        for (char c : t->text) {
            unsigned digit;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digit = static_cast<unsigned>(c - '0');
            } else if (hex && std::isxdigit(static_cast<unsigned char>(c))) {
                digit = static_cast<unsigned>(std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
            } else {
                fail(origin, t->line, t->column, "bad entry '" + t->text + "'");
            }
            v = v * (hex ? 16 : 10) + digit;
            if (v >= limit) fail(origin, t->line, t->column, "entry '" + t->text + "' is >= 2^" + std::to_string(m));
        }
        table.push_back(static_cast<std::uint16_t>(v));
    }
    return SBox(n, m, std::move(table));
}

SBox load_sbox_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sbox_text(buf.str(), path.string());
}

std::string format_sbox_text(const SBox& s, const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << '\n';
    os << s.n() << ' ' << s.m() << " hex\n";
    const unsigned digits = (s.m() + 3) / 4;
    static constexpr char kHex[] = "0123456789abcdef";
    for (std::size_t y = 0; y < s.size(); ++y) {
        const Word v = s(static_cast<Word>(y));
        for (unsigned d = digits; d-- > 0;) os << kHex[(v >> (4 * d)) & 0xF];
        os << ((y % 16 == 15 || y + 1 == s.size()) ? '\n' : ' ');
    }
    return os.str();
}

CorpusEntry load_corpus_entry(const std::filesystem::path& path) {
    CorpusEntry e;
    e.name = path.stem().string();
    e.sbox = load_sbox_file(path);
    std::ifstream in(path);
    for (std::string line; std::getline(in, line);) {
        constexpr std::string_view tag = "# source:";
        if (line.rfind(tag, 0) == 0) {
            e.source = line.substr(tag.size());
            e.source.erase(0, e.source.find_first_not_of(' '));
            break;
        }
    }
    e.degree = algebraic_degree(e.sbox);
    e.sosm_rank = rank(sosm(e.sbox));
    e.is_permutation = e.sbox.is_permutation();
    return e;
}

std::vector<CorpusRow> corpus_report(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + ": not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& de : std::filesystem::directory_iterator(dir)) {
        if (de.path().extension() == ".sbox") files.push_back(de.path());
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.stem() < b.stem(); });
    std::vector<CorpusRow> rows;
    for (const auto& f : files) {
        CorpusRow row{f.stem().string(), std::nullopt, {}};
        try {
            row.entry = load_corpus_entry(f);
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sboxeq

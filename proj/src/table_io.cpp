#include "sq/table_io.hpp"

#include <sstream>

namespace sq {

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> content_lines(const std::string& text, int first_line = 1)
{
    std::vector<Line> out;
    std::istringstream in(text);
    std::string line;
    int number = first_line - 1;
    while (std::getline(in, line)) {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        out.push_back({number, line});
    }
    return out;
}

std::vector<int> parse_ints(const Line& line)
{
    std::istringstream in(line.text);
    std::vector<int> out;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        }
        catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw ParseError(line.number, "expected an integer, got '" + token + "'");
        out.push_back(v);
    }
    return out;
}

OpTable read_block(const std::vector<Line>& lines, std::size_t& pos, int n, const char* what)
{
    RawTable rows;
    for (int r = 0; r < n; ++r) {
        if (pos >= lines.size())
            throw ParseError(lines.empty() ? 0 : lines.back().number,
                std::string("unexpected end of input in the ") + what + " block");
        const Line& line = lines[pos++];
        auto row = parse_ints(line);
        if (static_cast<int>(row.size()) != n)
            throw ParseError(line.number,
                std::string(what) + " row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        for (int v : row)
            if (v < 1 || v > n)
                throw ParseError(line.number, std::string(what) + " entry " + std::to_string(v) + " out of range 1.."
                    + std::to_string(n));
        rows.push_back(std::move(row));
    }
    return OpTable(rows);
}

StructureBundle parse_lines(const std::vector<Line>& lines)
{
    if (lines.empty())
        throw ParseError(0, "empty table text");
    std::istringstream header(lines[0].text);
    std::string word;
    header >> word;
    if (word != "semiquandle")
        throw ParseError(lines[0].number, "expected header 'semiquandle <n> [singular] [virtual]'");
    int n = 0;
    if (! (header >> n) || n < 1)
        throw ParseError(lines[0].number, "missing or invalid order");
    bool singular = false, virt = false;
    while (header >> word) {
        if (word == "singular")
            singular = true;
        else if (word == "virtual")
            virt = true;
        else
            throw ParseError(lines[0].number, "unknown header flag '" + word + "'");
    }

    std::size_t pos = 1;
    StructureBundle b;
    b.table.up = read_block(lines, pos, n, "up");
    b.table.dn = read_block(lines, pos, n, "dn");
    if (singular) {
        OpTable hup = read_block(lines, pos, n, "hup");
        OpTable hdn = read_block(lines, pos, n, "hdn");
        b.singular = SingularExtension{std::move(hup), std::move(hdn)};
    }
    if (virt) {
        if (pos >= lines.size())
            throw ParseError(lines.back().number, "missing 'v:' line");
        const Line& line = lines[pos++];
        auto colon = line.text.find(':');
        if (colon == std::string::npos || line.text.substr(0, colon).find('v') == std::string::npos)
            throw ParseError(line.number, "expected 'v: p1 ... pn'");
        auto images = parse_ints({line.number, line.text.substr(colon + 1)});
        if (static_cast<int>(images.size()) != n)
            throw ParseError(line.number, "v has " + std::to_string(images.size()) + " entries, expected "
                + std::to_string(n));
        try {
            b.virt = VirtualExtension{Permutation(images)};
        }
        catch (const StructureError& e) {
            throw ParseError(line.number, e.what());
        }
    }
    if (pos < lines.size())
        throw ParseError(lines[pos].number, "unexpected trailing content");
    return b;
}

void write_block(std::ostringstream& out, const OpTable& t)
{
    for (int x = 1; x <= t.order(); ++x) {
        for (int y = 1; y <= t.order(); ++y)
            out << (y > 1 ? " " : "") << t.at(x, y);
        out << '\n';
    }
}

} // namespace

StructureBundle parse_bundle(const std::string& text) { return parse_lines(content_lines(text)); }

std::string format_bundle(const StructureBundle& b)
{
    std::ostringstream out;
    out << "semiquandle " << b.order();
    if (b.singular)
        out << " singular";
    if (b.virt)
        out << " virtual";
    out << '\n';
    write_block(out, b.table.up);
    out << '\n';
    write_block(out, b.table.dn);
    if (b.singular) {
        out << '\n';
        write_block(out, b.singular->hup);
        out << '\n';
        write_block(out, b.singular->hdn);
    }
    if (b.virt) {
        out << "\nv:";
        for (int p : b.virt->v.images())
            out << ' ' << p;
        out << '\n';
    }
    return out.str();
}

std::vector<StructureBundle> parse_bundle_stream(const std::string& text)
{
    std::vector<StructureBundle> out;
    std::vector<Line> chunk;
    auto flush = [&] {
        if (! chunk.empty())
            out.push_back(parse_lines(chunk));
        chunk.clear();
    };
    for (auto& line : content_lines(text)) {
        auto first = line.text.find_first_not_of(" \t");
        std::string trimmed = line.text.substr(first);
        if (trimmed.rfind('%', 0) == 0)
            flush();
        else if (trimmed.rfind("count:", 0) == 0)
            continue;
        else
            chunk.push_back(line);
    }
    flush();
    return out;
}

} // namespace sq

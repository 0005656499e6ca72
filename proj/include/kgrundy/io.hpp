#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/graph.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgrundy
{
    enum class GraphFormat
    {
        Graph6,
        EdgeList
    };

    namespace detail
    {
        inline auto graph6_size_prefix(int n) -> std::string
        {
            std::string out;
            if (n <= 62)
                out.push_back(static_cast<char>(n + 63));
            else if (n <= 258047) {
                out.push_back('~');
                for (int shift = 12 ; shift >= 0 ; shift -= 6)
                    out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
            }
            else {
                out.append("~~");
                for (int shift = 30 ; shift >= 0 ; shift -= 6)
                    out.push_back(static_cast<char>(((static_cast<long long>(n) >> shift) & 63) + 63));
            }
            return out;
        }
    }

    inline auto to_graph6(const Graph & g) -> std::string
    {
        const int n = g.size();
        std::string out = detail::graph6_size_prefix(n);
        int bits = 0, acc = 0;
        for (Vertex j = 1 ; j < n ; ++j)
            for (Vertex i = 0 ; i < j ; ++i) {
                acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
                if (++bits == 6) {
                    out.push_back(static_cast<char>(acc + 63));
                    bits = acc = 0;
                }
            }
        if (bits > 0)
            out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
        return out;
    }

    /// Parses one graph6 record. base_offset is added to reported byte offsets so
    /// that errors inside a multi-line stream point at the right place.
    inline auto from_graph6(std::string_view text, std::size_t base_offset = 0) -> Graph
    {
        std::size_t pos = 0;
        constexpr std::string_view header = ">>graph6<<";
        if (text.substr(0, header.size()) == header)
            pos = header.size();
        while (! text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
            text.remove_suffix(1);

        auto fail = [&] (const std::string & what, std::size_t at) -> ParseError {
            return ParseError("graph6: " + what, base_offset + at);
        };
        auto sextet = [&] (std::size_t at) -> int {
            if (at >= text.size())
                throw fail("unexpected end of input", at);
            auto c = static_cast<unsigned char>(text[at]);
            if (c < 63 || c > 126)
                throw fail("byte outside the printable graph6 range", at);
            return c - 63;
        };

        if (pos >= text.size())
            throw fail("empty record", pos);

        long long n = 0;
        if (text[pos] != '~')
            n = sextet(pos++);
        else if (pos + 1 < text.size() && text[pos + 1] == '~') {
            pos += 2;
            for (int i = 0 ; i < 6 ; ++i)
                n = (n << 6) | sextet(pos++);
        }
        else {
            pos += 1;
            for (int i = 0 ; i < 3 ; ++i)
                n = (n << 6) | sextet(pos++);
        }
        if (n > (1 << 20))
            throw fail("graph too large", 0);

        for (std::size_t at = pos ; at < text.size() ; ++at)
            sextet(at);
        const long long pairs = n * (n - 1) / 2;
        const std::size_t data_bytes = static_cast<std::size_t>((pairs + 5) / 6);
        if (text.size() - pos != data_bytes)
            throw fail("expected " + std::to_string(data_bytes) + " data bytes, found " + std::to_string(text.size() - pos),
                    text.size() < pos + data_bytes ? text.size() : pos + data_bytes);

        std::vector<std::pair<Vertex, Vertex>> es;
        long long index = 0;
        for (Vertex j = 1 ; j < n ; ++j)
            for (Vertex i = 0 ; i < j ; ++i, ++index) {
                std::size_t at = pos + static_cast<std::size_t>(index / 6);
                int bit = 5 - static_cast<int>(index % 6);
                if ((sextet(at) >> bit) & 1)
                    es.emplace_back(i, j);
            }
        if (pairs % 6 != 0) {
            std::size_t at = pos + data_bytes - 1;
            int unused = 6 - static_cast<int>(pairs % 6);
            if (sextet(at) & ((1 << unused) - 1))
                throw fail("nonzero padding bits", at);
        }
        return Graph(static_cast<int>(n), es);
    }

    /// One graph per non-empty line.
    inline auto read_graph6_stream(std::istream & in) -> std::vector<Graph>
    {
        std::vector<Graph> result;
        std::string line;
        std::size_t offset = 0;
        while (std::getline(in, line)) {
            std::string_view view(line);
            if (! view.empty() && view.back() == '\r')
                view.remove_suffix(1);
            if (! view.empty())
                result.push_back(from_graph6(view, offset));
            offset += line.size() + 1;
        }
        return result;
    }

    /// "# vertices N" header followed by one "u v" line per edge.
    inline auto to_edge_list(const Graph & g) -> std::string
    {
        std::ostringstream out;
        out << "# vertices " << g.size() << '\n';
        for (auto [u, v] : g.edges())
            out << u << ' ' << v << '\n';
        return out.str();
    }

    /// Whitespace edge list with 0-based ids, one edge per line. Lines starting with
    /// '#' are comments, except "# vertices N" which fixes the vertex count;
    /// without it the count is one more than the largest id.
    inline auto from_edge_list(std::string_view text) -> Graph
    {
        std::vector<std::pair<Vertex, Vertex>> es;
        std::vector<std::size_t> offsets;
        long long declared = -1, max_id = -1;

        std::size_t line_start = 0;
        while (line_start <= text.size()) {
            std::size_t line_end = text.find('\n', line_start);
            if (line_end == std::string_view::npos)
                line_end = text.size();
            std::string_view line = text.substr(line_start, line_end - line_start);

            std::size_t first = line.find_first_not_of(" \t\r");
            if (first != std::string_view::npos && line[first] == '#') {
                std::istringstream s{ std::string(line.substr(first + 1)) };
                std::string word;
                long long count;
                if (s >> word && word == "vertices") {
                    if (! (s >> count) || count < 0)
                        throw ParseError("edge list: malformed vertex count", line_start + first);
                    declared = count;
                }
            }
            else if (first != std::string_view::npos) {
                std::vector<long long> ids;
                std::size_t i = 0;
                while (i < line.size()) {
                    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                        ++i;
                    if (i == line.size())
                        break;
                    std::size_t j = i;
                    while (j < line.size() && ! std::isspace(static_cast<unsigned char>(line[j])))
                        ++j;
                    long long value = 0;
                    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
                    if (ec != std::errc() || ptr != line.data() + j || value < 0)
                        throw ParseError("edge list: '" + std::string(line.substr(i, j - i)) + "' is not a vertex id", line_start + i);
                    ids.push_back(value);
                    i = j;
                }
                if (ids.size() != 2)
                    throw ParseError("edge list: expected two ids per line", line_start + first);
                if (ids[0] == ids[1])
                    throw ParseError("edge list: self-loop at vertex " + std::to_string(ids[0]), line_start + first);
                if (std::max(ids[0], ids[1]) >= (1 << 24))
                    throw ParseError("edge list: vertex id too large", line_start + first);
                es.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
                offsets.push_back(line_start + first);
                max_id = std::max({ max_id, ids[0], ids[1] });
            }
            line_start = line_end + 1;
        }

        long long n = declared >= 0 ? declared : max_id + 1;
        for (std::size_t e = 0 ; e < es.size() ; ++e)
            if (std::max(es[e].first, es[e].second) >= n)
                throw ParseError("edge list: vertex id exceeds declared count " + std::to_string(n), offsets[e]);

        // duplicates
        std::vector<std::pair<std::pair<Vertex, Vertex>, std::size_t>> keyed;
        for (std::size_t e = 0 ; e < es.size() ; ++e)
            keyed.push_back({ std::minmax(es[e].first, es[e].second), offsets[e] });
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t e = 1 ; e < keyed.size() ; ++e)
            if (keyed[e].first == keyed[e - 1].first)
                throw ParseError("edge list: duplicate edge " + std::to_string(keyed[e].first.first) + " "
                        + std::to_string(keyed[e].first.second), std::max(keyed[e].second, keyed[e - 1].second));

        return Graph(static_cast<int>(n), es);
    }

    inline auto parse(std::string_view text, GraphFormat format) -> Graph
    {
        return format == GraphFormat::Graph6 ? from_graph6(text) : from_edge_list(text);
    }

    inline auto serialize(const Graph & g, GraphFormat format) -> std::string
    {
        return format == GraphFormat::Graph6 ? to_graph6(g) : to_edge_list(g);
    }
}

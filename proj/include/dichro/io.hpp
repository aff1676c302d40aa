// Digraph text format (UTF-8, LF):
//   line 1:        p dgf <n> <m>
//   next m lines:  a <u> <v>     with 0 <= u,v < n, u != v
// Lines beginning with '#' are ignored anywhere. Duplicate arc lines are an
// error. Writers emit arcs in ascending (u,v) order, so the format is
// bit-exact for a given digraph value.

#ifndef DICHRO_IO_HPP
#define DICHRO_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "dichro/digraph.hpp"

namespace dichro {

struct FormatError : Error {
    FormatError(const std::string& msg, int line)
        : Error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
    int line_no;
};

inline Digraph read_digraph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1, m = -1;
    std::vector<Arc> arcs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            if (n != -1) throw FormatError("duplicate problem line", line_no);
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "dgf" || n < 0 || m < 0)
                throw FormatError("expected `p dgf <n> <m>`", line_no);
        } else if (tag == "a") {
            if (n == -1) throw FormatError("arc line before problem line", line_no);
            int u, v;
            if (!(ls >> u >> v)) throw FormatError("expected `a <u> <v>`", line_no);
            if (u == v) throw FormatError("loop arc", line_no);
            if (u < 0 || u >= n || v < 0 || v >= n) throw FormatError("arc endpoint out of range", line_no);
            for (const auto& e : arcs)
                if (e == Arc{u, v}) throw FormatError("duplicate arc line", line_no);
            arcs.emplace_back(u, v);
        } else {
            throw FormatError("unknown line tag `" + tag + "`", line_no);
        }
    }
    if (n == -1) throw FormatError("missing problem line", line_no + 1);
    if (static_cast<int>(arcs.size()) != m)
        throw FormatError("arc count mismatch: header says " + std::to_string(m) + ", found " +
                              std::to_string(arcs.size()),
                          line_no + 1);
    return Digraph(n, std::move(arcs));
}

inline Digraph read_digraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open digraph file: " + path);
    return read_digraph(in);
}

inline void write_digraph(std::ostream& out, const Digraph& d) {
    out << "p dgf " << d.order() << ' ' << d.arc_count() << '\n';
    for (const auto& [u, v] : d.arcs()) out << "a " << u << ' ' << v << '\n';
}

inline std::string digraph_to_string(const Digraph& d) {
    std::ostringstream ss;
    write_digraph(ss, d);
    return ss.str();
}

inline void write_digraph_file(const std::string& path, const Digraph& d) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_digraph(out, d);
}

// Coloring text format: `c <v> <color>` lines, ascending v.
inline void write_coloring(std::ostream& out, const std::vector<int>& colors) {
    for (size_t v = 0; v < colors.size(); ++v) out << "c " << v << ' ' << colors[v] << '\n';
}

}  // namespace dichro

#endif

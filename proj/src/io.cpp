#include "sinrsched/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sinrsched {

namespace {

[[noreturn]] void fail_line(int line, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

// Strips comments and surrounding whitespace; empty result means skip.
std::string clean(const std::string& raw) {
    std::string s = raw;
    if (const auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for reading");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

}  // namespace

Topology parse_topology(std::istream& in) {
    int declared_nodes = -1, declared_links = -1;
    double r_min = 0.0, r_max = 0.0;
    bool have_r = false;
    std::vector<Node> nodes;
    std::vector<Link> links;
    std::vector<int> link_lines;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = clean(raw);
        if (s.empty()) continue;
        std::istringstream ss(s);
        std::string tag;
        ss >> tag;
        if (tag == "nodes") {
            if (!(ss >> declared_nodes) || declared_nodes < 0) fail_line(line, "bad node count");
        } else if (tag == "links") {
            if (!(ss >> declared_links) || declared_links < 0) fail_line(line, "bad link count");
        } else if (tag == "r") {
            if (!(ss >> r_min >> r_max)) fail_line(line, "bad length range");
            have_r = true;
        } else if (tag == "N") {
            Node n;
            if (!(ss >> n.id >> n.pos.x() >> n.pos.y())) fail_line(line, "bad node record");
            nodes.push_back(n);
        } else if (tag == "L") {
            Link l;
            if (!(ss >> l.id >> l.sender >> l.receiver)) fail_line(line, "bad link record");
            links.push_back(l);
            link_lines.push_back(line);
        } else {
            fail_line(line, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ss >> extra) fail_line(line, "trailing tokens");
    }
    if (declared_nodes < 0) throw std::runtime_error("missing 'nodes' header");
    if (declared_links < 0) throw std::runtime_error("missing 'links' header");
    if (!have_r) throw std::runtime_error("missing 'r' header");
    if (static_cast<int>(nodes.size()) != declared_nodes)
        throw std::runtime_error("declared " + std::to_string(declared_nodes) + " nodes, found " +
                                 std::to_string(nodes.size()));
    if (static_cast<int>(links.size()) != declared_links)
        throw std::runtime_error("declared " + std::to_string(declared_links) + " links, found " +
                                 std::to_string(links.size()));
    try {
        return Topology(std::move(nodes), links, r_min, r_max);
    } catch (const std::invalid_argument& e) {
        // Attribute the failure to a link line when one is identifiable.
        const std::string what = e.what();
        for (std::size_t i = 0; i < links.size(); ++i) {
            const std::string tag = "link " + std::to_string(links[i].id);
            if (what.find(tag) != std::string::npos) fail_line(link_lines[i], what);
        }
        throw std::runtime_error(what);
    }
}

Topology load_topology(const std::string& path) {
    auto f = open_in(path);
    try {
        return parse_topology(f);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_topology(std::ostream& out, const Topology& topo) {
    out << "nodes " << topo.nodes().size() << "\n";
    out << "links " << topo.links().size() << "\n";
    out << "r " << fmt_double(topo.r_min()) << " " << fmt_double(topo.r_max()) << "\n";
    for (const Node& n : topo.nodes())
        out << "N " << n.id << " " << fmt_double(n.pos.x()) << " " << fmt_double(n.pos.y())
            << "\n";
    for (const Link& l : topo.links())
        out << "L " << l.id << " " << l.sender << " " << l.receiver << "\n";
}

void save_topology(const std::string& path, const Topology& topo) {
    auto f = open_out(path);
    write_topology(f, topo);
}

void write_trace_csv(std::ostream& out, const BacklogTrace& trace) {
    out << "slot,total_backlog,scheduled_count,max_power\n";
    for (std::size_t t = 0; t < trace.total_backlog.size(); ++t)
        out << t << "," << trace.total_backlog[t] << "," << trace.scheduled_count[t] << ","
            << fmt_double(trace.max_power[t]) << "\n";
}

void save_trace_csv(const std::string& path, const BacklogTrace& trace) {
    auto f = open_out(path);
    write_trace_csv(f, trace);
}

BacklogTrace parse_trace_csv(std::istream& in) {
    BacklogTrace trace;
    std::string raw;
    if (!std::getline(in, raw) || clean(raw) != "slot,total_backlog,scheduled_count,max_power")
        throw std::runtime_error("trace: missing or malformed header");
    int line = 1;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = clean(raw);
        if (s.empty()) continue;
        std::istringstream ss(s);
        long slot;
        long long backlog;
        int count;
        double p;
        char c1, c2, c3;
        if (!(ss >> slot >> c1 >> backlog >> c2 >> count >> c3 >> p) || c1 != ',' || c2 != ',' ||
            c3 != ',')
            fail_line(line, "bad trace row");
        if (slot != static_cast<long>(trace.total_backlog.size()))
            fail_line(line, "out-of-order slot index");
        trace.total_backlog.push_back(backlog);
        trace.scheduled_count.push_back(count);
        trace.max_power.push_back(p);
    }
    return trace;
}

void write_schedule(std::ostream& out, const Schedule& schedule) {
    for (int id : schedule.link_ids) out << id << "\n";
    for (int id : schedule.link_ids) out << "P " << id << " " << fmt_double(schedule.powers.at(id)) << "\n";
}

void save_schedule(const std::string& path, const Schedule& schedule) {
    auto f = open_out(path);
    write_schedule(f, schedule);
}

Schedule parse_schedule(std::istream& in) {
    Schedule s;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string str = clean(raw);
        if (str.empty()) continue;
        std::istringstream ss(str);
        if (str[0] == 'P') {
            std::string tag;
            int id;
            double watts;
            if (!(ss >> tag >> id >> watts) || tag != "P") fail_line(line, "bad power record");
            s.powers.watts[id] = watts;
        } else {
            int id;
            if (!(ss >> id)) fail_line(line, "bad link id");
            s.link_ids.push_back(id);
        }
        std::string extra;
        if (ss >> extra) fail_line(line, "trailing tokens");
    }
    std::sort(s.link_ids.begin(), s.link_ids.end());
    return s;
}

Schedule load_schedule(const std::string& path) {
    auto f = open_in(path);
    try {
        return parse_schedule(f);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::map<int, double> parse_weights(std::istream& in) {
    std::map<int, double> w;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = clean(raw);
        if (s.empty()) continue;
        std::istringstream ss(s);
        int id;
        double weight;
        if (!(ss >> id >> weight)) fail_line(line, "bad weight record");
        if (!w.emplace(id, weight).second) fail_line(line, "duplicate weight for link " + std::to_string(id));
        std::string extra;
        if (ss >> extra) fail_line(line, "trailing tokens");
    }
    return w;
}

std::map<int, double> load_weights(const std::string& path) {
    auto f = open_in(path);
    try {
        return parse_weights(f);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace sinrsched

#ifndef SINRSCHED_IO_HPP
#define SINRSCHED_IO_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "sinrsched/model.hpp"
#include "sinrsched/scheduling.hpp"
#include "sinrsched/simulator.hpp"

namespace sinrsched {

/// Topology text format.  Lines, in order: `nodes <count>`, `links
/// <count>`, `r <r_min> <r_max>`, then `N <id> <x> <y>` and `L <id>
/// <sender> <receiver>` records.  `#` starts a comment; blank lines are
/// ignored.  Parse errors carry the offending line number.
Topology parse_topology(std::istream& in);
Topology load_topology(const std::string& path);
void write_topology(std::ostream& out, const Topology& topo);
void save_topology(const std::string& path, const Topology& topo);

/// Backlog trace CSV: header `slot,total_backlog,scheduled_count,max_power`
/// then one row per slot.  Output is byte-stable for identical traces.
void write_trace_csv(std::ostream& out, const BacklogTrace& trace);
void save_trace_csv(const std::string& path, const BacklogTrace& trace);
BacklogTrace parse_trace_csv(std::istream& in);

/// Schedule file: one link id per line, plus optional `P <id> <watts>`
/// power lines.  `#` comments allowed.
void write_schedule(std::ostream& out, const Schedule& schedule);
void save_schedule(const std::string& path, const Schedule& schedule);
Schedule parse_schedule(std::istream& in);
Schedule load_schedule(const std::string& path);

/// Weights file: `<link id> <weight>` per line, `#` comments allowed.
std::map<int, double> parse_weights(std::istream& in);
std::map<int, double> load_weights(const std::string& path);

}  // namespace sinrsched

#endif

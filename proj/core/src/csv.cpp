#include "signorini/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace signorini {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_record_csv_header(std::ostream& out) { out << kRecordCsvHeader << "\n"; }

void append_record_csv(std::ostream& out, const ConvergenceRecord& rec) {
    out << rec.step << ',' << rec.num_dofs << ',' << fmt(rec.eta) << ',' << fmt(rec.S) << ','
        << fmt(rec.eta_plus_S) << ',' << fmt(rec.h_max) << ',' << rec.active_points << ','
        << fmt(rec.walltime_ms) << ',';
    if (rec.exact_h1_error) out << fmt(*rec.exact_h1_error);
    out << "\n";
}

void write_records_csv(std::ostream& out, std::span<const ConvergenceRecord> records) {
    write_record_csv_header(out);
    for (const ConvergenceRecord& rec : records) append_record_csv(out, rec);
}

std::vector<ConvergenceRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRecordCsvHeader)
        throw std::runtime_error("records csv: bad header");
    std::vector<ConvergenceRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (ls.eof() && !line.empty() && line.back() == ',') fields.push_back("");
        if (fields.size() != 9) throw std::runtime_error("records csv: bad row: " + line);
        ConvergenceRecord rec;
        rec.step = std::stoi(fields[0]);
        rec.num_dofs = std::stoi(fields[1]);
        rec.eta = std::stod(fields[2]);
        rec.S = std::stod(fields[3]);
        rec.eta_plus_S = std::stod(fields[4]);
        rec.h_max = std::stod(fields[5]);
        rec.active_points = std::stoi(fields[6]);
        rec.walltime_ms = std::stod(fields[7]);
        if (!fields[8].empty()) rec.exact_h1_error = std::stod(fields[8]);
        out.push_back(rec);
    }
    return out;
}

void write_indicators_csv(std::ostream& out, const Mesh& m, const IndicatorSet& ind) {
    out << "element,eta_K,osc_K,E_K\n";
    for (int k = 0; k < m.num_triangles(); ++k)
        out << k << ',' << fmt(ind.eta_element[k]) << ',' << fmt(ind.oscillation[k]) << ','
            << fmt(ind.combined[k]) << "\n";
    out << "edge,class,indicator\n";
    for (int be = 0; be < static_cast<int>(m.boundary_edges().size()); ++be) {
        const BoundaryClass tag = m.boundary_edges()[be].tag;
        const double value = tag == BoundaryClass::Contact  ? ind.eta_contact[be]
                             : tag == BoundaryClass::Neumann ? ind.eta_neumann[be]
                                                             : 0.0;
        out << be << ',' << to_string(tag) << ',' << fmt(value) << "\n";
    }
}

}  // namespace signorini

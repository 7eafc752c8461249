#pragma once

// JSON and CSV serialization of the report types. Numbers are printed with
// 17 significant digits so identical runs give identical files.

#include <string>
#include <vector>

#include <json.hpp>

#include "uhs/lemma_lab.hpp"
#include "uhs/scattering.hpp"
#include "uhs/solver.hpp"
#include "uhs/stationary_phase.hpp"

namespace uhs {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const EnvelopeEntry& e);
Json to_json(const RegularityReport& r);
Json to_json(const CompatibilityReport& r);
Json to_json(const ExtractionResult& r);
Json to_json(const ResidualStudy& r);
Json to_json(const PhaseComparison& r);
Json to_json(const EnvelopeFit& r);

/// Round-trip reproducible decimal form of a double.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    CsvTable& row();
    CsvTable& add(double v);
    CsvTable& add(Complex z);
    CsvTable& add(const std::string& text);
    CsvTable& add(int v);
    std::string str() const;
    void write(const std::string& path) const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::string& path, const std::string& text);

}  // namespace uhs

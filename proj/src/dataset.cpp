#include "smf/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace smf {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

double parse_component(const std::string& token, const std::string& source, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size())
        throw DataError(source + ":" + std::to_string(line_no) + ": invalid component '" +
                        token + "'");
    return v;
}

} // namespace

Dataset parse_dataset(std::istream& in, DatasetFormat format, const std::string& source_name) {
    Dataset out;
    std::unordered_set<std::string> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens.size() < 2)
            throw DataError(source_name + ":" + std::to_string(line_no) +
                            ": a sequence needs at least one component");

        std::string id;
        std::string label;
        if (format == DatasetFormat::Id) {
            id = tokens[0];
        } else {
            label = tokens[0];
            id = "line-" + std::to_string(line_no);
        }
        if (!seen.insert(id).second)
            throw DataError(source_name + ":" + std::to_string(line_no) + ": duplicate id '" +
                            id + "'");

        Eigen::MatrixXd values(1, static_cast<Index>(tokens.size() - 1));
        for (std::size_t i = 1; i < tokens.size(); ++i)
            values(0, static_cast<Index>(i - 1)) = parse_component(tokens[i], source_name, line_no);
        out.sequences.emplace_back(std::move(id), std::move(values));
        out.labels.push_back(std::move(label));
    }
    return out;
}

Dataset load_dataset(const std::string& path, DatasetFormat format) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");
    return parse_dataset(in, format, path);
}

} // namespace smf

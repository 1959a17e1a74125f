#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smf/sequence.hpp"

namespace smf {

/// How dataset lines are interpreted:
///   Id  — first field is the sequence id, the rest are components;
///   Ucr — headerless class-labelled rows: first field is a class label,
///         ids are auto-generated "line-<n>" from the 1-based file line.
enum class DatasetFormat { Id, Ucr };

struct Dataset {
    std::vector<SequenceSlice> sequences;
    std::vector<std::string> labels; // parallel to sequences; empty strings in Id mode
};

/// Parse a dataset: one sequence per line, fields separated by commas and/or
/// whitespace, components are decimal numbers. Blank lines and '#' comments
/// are skipped. Ids must be unique and every sequence needs at least one
/// component.
Dataset parse_dataset(std::istream& in, DatasetFormat format, const std::string& source_name);

Dataset load_dataset(const std::string& path, DatasetFormat format = DatasetFormat::Id);

} // namespace smf

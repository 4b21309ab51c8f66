#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "mlrisk/domain.hpp"

namespace mlrisk {

struct CatalogLevel {
    std::string label;
    std::string description;
    double guideline_score = 0.0;
    bool operator==(const CatalogLevel&) const = default;
};

struct CatalogEntry {
    std::string id;
    std::string name;
    Category category = Category::Data;
    std::array<CatalogLevel, 3> levels;
    bool operator==(const CatalogEntry&) const = default;
};

/// The three levels only anchor the scale; any score in [0, 1] may be assigned.
inline constexpr std::array<double, 3> kDefaultGuidelineScores{0.0, 0.5, 1.0};

namespace detail {

struct RawLevel {
    std::string_view label;
    std::string_view description;
};

struct RawEntry {
    std::string_view id;
    std::string_view name;
    Category category;
    std::array<RawLevel, 3> levels;
};

// clang-format off
inline constexpr RawEntry kBuiltinEntries[] = {
    {"D.01", "Collected training data quality", Category::Data,
         {{{"No guarantees", "data provenance is not clear, integrity cannot be checked"},
          {"Partial guarantees", "data provenance is known, integrity can be checked to some extent"},
          {"High guarantees", "data provenance is known, all the data is inventoried, integrity is guaranteed"}}}},
    {"D.02", "Labeling quality", Category::Data,
         {{{"No guarantees", "labeling of the data was done by a third-party and was not checked for correctness"},
          {"Partial guarantees", "labeling was done by a trustworthy third-party, but was not checked for correctness"},
          {"High guarantees", "all the data labeling was checked for correctness"}}}},
    {"D.03", "Data and information flow", Category::Data,
         {{{"Not secure", "data flow to the model is not secured by information security controls -- confidentiality, integrity, and availability can be compromised"},
          {"Secure", "confidentiality and integrity is protected by security controls, but availability can be affected"},
          {"Secure and guaranteed", "like Secure, but with added measures to protect availability to support business continuity"}}}},
    {"D.04", "Data storage", Category::Data,
         {{{"Not secure", "data storage is not secured by information security controls -- confidentiality, integrity, and availability can be compromised"},
          {"Secure", "confidentiality and integrity is protected by security controls, but availability can be affected"},
          {"Secure and guaranteed", "like Secure, but with added measures to protect availability to support business continuity"}}}},
    {"D.05", "Data governance", Category::Data,
         {{{"Undefined", "data governance is not clear -- accountability is not implemented"},
          {"Semi-defined", "data governance is defined but the responsibilities are not clear"},
          {"Defined", "responsibilities for handling and securing the data are clearly defined and assigned to trained personnel"}}}},
    {"D.06", "Data quality reviews", Category::Data,
         {{{"Undefined", "there are no reviews related to data quality"},
          {"Ad-hoc", "data quality is reviewed in case a problem is found"},
          {"Regular", "policies to guarantee regular data quality reviews are deployed"}}}},
    {"D.07", "Data leveraging", Category::Data,
         {{{"Undefined", "there is no process in place to ensure proper usage of data from public domain or other sources"},
          {"Semi-defined", "there are guidelines in place to handle usage of data from public domain and other sources but their application is not strictly enforced"},
          {"Defined", "there is a formal process in place to handle usage of data from public domain and other sources"}}}},
    {"M.01", "Model governance", Category::Model,
         {{{"Undefined", "model governance is not clear -- accountability is not implemented"},
          {"Semi-defined", "governance ownership is defined but the responsibilities are not clear"},
          {"Defined", "responsibilities for handling and securing the model are clearly defined and assigned to trained personnel"}}}},
    {"M.02", "Model storage", Category::Model,
         {{{"Not secure", "model data is not secured by information security controls -- confidentiality, integrity, and availability can be compromised"},
          {"Secure", "confidentiality and integrity is protected by security controls, but availability can be affected"},
          {"Secure and guaranteed", "like Secure, but with added measures to protect availability to support business continuity"}}}},
    {"M.03", "Model robustness", Category::Model,
         {{{"Not implemented", "adversarial attacks are not taken into account when the models are constructed"},
          {"Partially implemented", "security-critical models are trained to be robust against pre-defined set of adversarial attacks"},
          {"Fully implemented", "all the model are trained to be robust against potential adversarial attacks"}}}},
    {"M.04", "Change control", Category::Model,
         {{{"Undefined", "there is no change control in place -- when new model is created, it replaces the old one"},
          {"Semi-defined", "there is a repository of older models, but no formalized way to rollback the changes"},
          {"Defined", "there is a formal process for change control in place"}}}},
    {"M.05", "Computational redundancy", Category::Model,
         {{{"Not implemented", "there is no redundant computation taking place, all the results are obtained from a single model"},
          {"Dual redundancy", "there are two different models in place, if the result is not the same, it is not used"},
          {"Multiple redundancy", "there are multiple models in place, the result is obtained by majority voting"}}}},
    {"M.06", "Model deployment guarantees", Category::Model,
         {{{"Third-party deployment", "no knowledge of the deployment environment, no security guarantees"},
          {"Client deployment", "partial knowledge of the deployment environment, partial security guarantees"},
          {"In-house deployment", "full knowledge of the environment, full security guarantees"}}}},
    {"M.07", "Runtime validation", Category::Model,
         {{{"Undefined", "there are no runtime validation processes in place"},
          {"Semi-defined", "runtime validation is performed, but there is no formal process on how to interpret the results"},
          {"Defined", "there is a formal process to guide the runtime validation and to interpret the results"}}}},
    {"E.01", "System patches and versioning", Category::ExecutionEnvironment,
         {{{"Not implemented", "there are no formal processes for patching and versioning of systems, updates are implemented ad-hoc"},
          {"Partially implemented", "critical patches are implemented, but there is no versioning that could revert the potentially unwanted changes"},
          {"Fully implemented", "processes are set to keep the systems to date with the latest patches and versioning is implemented to be able to revert the changes in case it is needed"}}}},
    {"E.02", "Software integrity", Category::ExecutionEnvironment,
         {{{"Not implemented", "integrity checking mechanisms for software are not implemented"},
          {"Partially implemented", "critical software components are periodically subjected to integrity checks"},
          {"Fully implemented", "all software components of critical systems are periodically subjected to integrity checks"}}}},
    {"E.03", "Supply chain security", Category::ExecutionEnvironment,
         {{{"Undefined", "there are no processes in place that would mitigate potential security incidents related to supply chain"},
          {"Semi-defined", "some processes for supply chain security are in place, but they are not formally defined"},
          {"Defined", "processes are in place to handle security related to supply chain"}}}},
    {"E.04", "Backups", Category::ExecutionEnvironment,
         {{{"Not implemented", "procedures for information system backups are not in place"},
          {"Partially implemented", "procedures for backups of critical information systems are defined"},
          {"Fully implemented", "formal procedures for backups for all information systems are in place"}}}},
    {"E.05", "Maintenance", Category::ExecutionEnvironment,
         {{{"Not implemented", "procedures for maintenance and repair of information systems are not in place"},
          {"Partially implemented", "procedures for maintenance and repair of critical information systems are defined"},
          {"Fully implemented", "formal procedures for maintenance and repair for all information systems are in place"}}}},
    {"E.06", "Network monitoring", Category::ExecutionEnvironment,
         {{{"Not implemented", "monitoring of computer networks for anomalies and incidents is not implemented"},
          {"Partially implemented", "some parts of the computer networks are monitored for anomalies and incidents"},
          {"Fully implemented", "formal procedures for monitoring computer networks for anomalies and incidents are defined"}}}},
    {"E.07", "Deployment validation", Category::ExecutionEnvironment,
         {{{"Not implemented", "ML-based systems are not validated at the place of deployment"},
          {"Partially implemented", "deployment validation of ML-based systems is performed, but there are no formal procedures"},
          {"Fully implemented", "formal procedures for deployment validation of ML-based systems are in place"}}}},
    {"S.01", "Cybersecurity roles and responsibilities", Category::SecurityControls,
         {{{"Undefined", "there are no cybersecurity roles defined within the organization"},
          {"Semi-defined", "cybersecurity roles are present in the organization but their responsibilities are not clearly defined"},
          {"Defined", "cybersecurity roles and responsibilities within the organization are clearly defined"}}}},
    {"S.02", "Accountability", Category::SecurityControls,
         {{{"Not implemented", "there are no processes in place related to accountability"},
          {"Partially implemented", "actions are logged on some devices, but the accountability is not strictly enforced"},
          {"Fully implemented", "all the processes that are required for accountability are clearly defined"}}}},
    {"S.03", "Security awareness and training", Category::SecurityControls,
         {{{"Not implemented", "there is no security awareness in the organization and no security-related trainings"},
          {"Partially implemented", "security-critical roles are trained to obey best practices, but security awareness is not present throughout the entire organization"},
          {"Fully implemented", "security awareness is present in the entire organization and regular trainings are conducted to keep employees up to date with the latest practices"}}}},
    {"S.04", "Identity management and access control", Category::SecurityControls,
         {{{"Not implemented", "there are no processes in place related to identity management and access control"},
          {"Partially implemented", "some processes for identity management are implemented but access control is not clearly defined w.r.t. organizational roles"},
          {"Fully implemented", "identity management processes are clearly defined to provide procedures for user enrollment, authorization and authentication"}}}},
    {"S.05", "Business continuity and disaster recovery", Category::SecurityControls,
         {{{"Not implemented", "there is no business continuity implemented in the organization"},
          {"Partially implemented", "some processes are in place, but they are not formally defined -- timeline for disaster recovery is not clear"},
          {"Fully implemented", "processes are defined to handle unexpected events that can disturb business continuity"}}}},
    {"S.06", "Incident reporting", Category::SecurityControls,
         {{{"Not implemented", "procedures for incident reporting are not implemented"},
          {"Partially implemented", "incident reporting is done to some extend, but there are no formal procedures in place"},
          {"Fully implemented", "formal procedures for incident reporting are defined"}}}},
    {"S.07", "Incident response", Category::SecurityControls,
         {{{"Not implemented", "procedures for incident response are not implemented"},
          {"Partially implemented", "incident response is done to some extend, but there are no formal procedures in place"},
          {"Fully implemented", "formal procedures for incident response are defined"}}}},
    {"S.08", "Forensics", Category::SecurityControls,
         {{{"Not implemented", "processes for forensics investigation after an incident are not implemented"},
          {"Partially implemented", "processes for forensics investigation after a major incident are in place"},
          {"Fully implemented", "formal processes for forensics investigation after an incident are in place"}}}},
    {"S.09", "Incident mitigation strategy", Category::SecurityControls,
         {{{"Not implemented", "strategies to mitigate incidents are not revised after an incident"},
          {"Partially implemented", "strategies to mitigate incidents are revised after a major incident"},
          {"Fully implemented", "there is a formal procedure on incident mitigation strategy -- incidents are revisited after an incident and updated to incorporate lessons learned"}}}},
    {"S.10", "Communication of recovery activities", Category::SecurityControls,
         {{{"Not implemented", "there is no process for communicating of recovery activities to relevant parties"},
          {"Partially implemented", "recovery activities after major incident are communicated to relevant parties"},
          {"Fully implemented", "formal procedures for communicating of recovery activities to relevant parties are in place"}}}},
};
// clang-format on

}  // namespace detail

/// An ordered, id-addressable set of catalog entries.
class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {}

    /// Data, model, execution environment and security controls factors, 31 in total.
    static const Catalog& builtin() {
        static const Catalog catalog = [] {
            std::vector<CatalogEntry> entries;
            for (const auto& raw : detail::kBuiltinEntries) {
                CatalogEntry e{std::string(raw.id), std::string(raw.name), raw.category, {}};
                for (std::size_t k = 0; k < 3; ++k)
                    e.levels[k] = {std::string(raw.levels[k].label), std::string(raw.levels[k].description),
                                   kDefaultGuidelineScores[k]};
                entries.push_back(std::move(e));
            }
            return Catalog(std::move(entries));
        }();
        return catalog;
    }

    const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    const CatalogEntry* find(std::string_view id) const {
        auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
        return it == entries_.end() ? nullptr : &*it;
    }

    const CatalogEntry& at(std::string_view id) const {
        if (const auto* e = find(id)) return *e;
        throw UnknownCatalogId(std::string(id));
    }

    /// Copy with the guideline scores of every entry replaced. Scores must be strictly
    /// increasing and inside [0, 1].
    Catalog with_guideline_scores(const std::array<double, 3>& scores) const {
        for (std::size_t k = 0; k < 3; ++k) {
            if (!detail::in_unit_interval(scores[k])) throw InvalidConfig("guideline score outside [0, 1]");
            if (k > 0 && !(scores[k] > scores[k - 1]))
                throw InvalidConfig("guideline scores must be strictly increasing");
        }
        Catalog copy = *this;
        for (auto& e : copy.entries_)
            for (std::size_t k = 0; k < 3; ++k) e.levels[k].guideline_score = scores[k];
        return copy;
    }

    bool operator==(const Catalog&) const = default;

private:
    std::vector<CatalogEntry> entries_;
};

inline const std::vector<CatalogEntry>& builtin_catalog() { return Catalog::builtin().entries(); }

inline double guideline_score(const CatalogEntry& entry, std::size_t level_index) {
    if (level_index >= entry.levels.size()) throw IndexOutOfRange(level_index);
    return entry.levels[level_index].guideline_score;
}

/// Factors carrying the catalog id, name and category. Base weights, cost and implementation
/// score start at zero; the assessor fills them in.
inline std::vector<EvaluationFactor> instantiate_from_catalog(const std::vector<std::string>& ids,
                                                              const Catalog& catalog = Catalog::builtin()) {
    std::vector<EvaluationFactor> factors;
    factors.reserve(ids.size());
    for (const auto& id : ids) {
        const auto& entry = catalog.at(id);
        EvaluationFactor f;
        f.id = entry.id;
        f.name = entry.name;
        f.category = entry.category;
        factors.push_back(std::move(f));
    }
    return factors;
}

}  // namespace mlrisk

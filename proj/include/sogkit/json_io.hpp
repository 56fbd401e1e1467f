#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sogkit/cuntz.hpp"
#include "sogkit/lathom.hpp"
#include "sogkit/oracle.hpp"
#include "sogkit/sogmon.hpp"

namespace sogkit {

struct BlueprintInput {
    std::vector<BlueprintStageInput> stages;
    std::vector<MonoidMapData> maps;
    bool unital = false;
};

struct ElementSet {
    std::string presentation;
    std::vector<SogElement> items;
};

/// Named objects of one batch run; every reference resolved, every object
/// validated at load time.
struct Workspace {
    std::map<std::string, GroupPtr> groups;
    std::map<std::string, Subgroup> subgroups;
    std::map<std::string, LatticePtr> lattices;
    std::map<std::string, FinSemilattice> semilattices;
    std::map<std::string, FinMonoid> monoids;
    std::map<std::string, SubgroupHom> homs;
    std::map<std::string, SogPresentation> presentations;
    std::map<std::string, ElementSet> element_sets;
    std::map<std::string, BlueprintInput> blueprints;
};

Workspace parse_workspace_files(const std::vector<std::string>& paths);
Workspace parse_workspace(const std::vector<nlohmann::json>& docs);

// JSON primitives shared by parsing, certificates, and tests.
nlohmann::json int_json(const Int& x);
Int json_int(const nlohmann::json& j);
nlohmann::json matrix_json(const IntMatrix& m);                        // row-major
IntMatrix json_matrix(const nlohmann::json& j, std::size_t rows);     // row count enforced
nlohmann::json subgroup_json(const Subgroup& s);
nlohmann::json sog_element_json(const SogElement& x);

struct CommandOptions {
    bool oracle = false;
    OracleBudget budget;
};

/// Dispatch one verb; returns the exit status (0 pass, 1 property fail,
/// 2 input error) and fills the certificate.
int run_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args,
                const CommandOptions& opts, nlohmann::json& cert);

}  // namespace sogkit

#include "sogkit/json_io.hpp"

#include <fstream>
#include <limits>
#include <set>

#include "sogkit/errors.hpp"
#include "sogkit/pureapprox.hpp"

namespace sogkit {

using nlohmann::json;

// ---- primitives -----------------------------------------------------------------

json int_json(const Int& x) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (x >= lo && x <= hi)
        return static_cast<std::int64_t>(x);
    return x.str();
}

Int json_int(const json& j) {
    if (j.is_number_integer())
        return Int(j.get<std::int64_t>());
    if (j.is_number_unsigned())
        return Int(j.get<std::uint64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw parse_error("bad integer literal '" + j.get<std::string>() + "'");
        }
    }
    throw parse_error("expected an integer, got " + std::string(j.type_name()));
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(int_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

IntMatrix json_matrix_free(const json& j) {
    if (!j.is_array())
        throw parse_error("matrix must be an array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array())
            throw parse_error("matrix rows must be arrays");
        if (i == 0)
            cols = j[i].size();
        else if (j[i].size() != cols)
            throw parse_error("matrix is not rectangular");
    }
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = json_int(j[i][k]);
    return m;
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw parse_error(std::string("missing field '") + name + "'");
    return *it;
}

std::size_t json_count(const json& j) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw parse_error("expected a nonnegative count");
    return j.get<std::size_t>();
}

std::vector<Int> json_vector(const json& j) {
    if (!j.is_array())
        throw parse_error("expected an integer array");
    std::vector<Int> out;
    for (const auto& e : j)
        out.push_back(json_int(e));
    return out;
}

std::vector<int> json_int_vector(const json& j) {
    if (!j.is_array())
        throw parse_error("expected an index array");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer() && !e.is_number_unsigned())
            throw parse_error("expected an index");
        out.push_back(e.get<int>());
    }
    return out;
}

SogElement json_sog_element(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw parse_error("an element is a pair [idempotent, coordinates]");
    if (!j[0].is_number_integer() && !j[0].is_number_unsigned())
        throw parse_error("element idempotent must be an index");
    return SogElement{j[0].get<int>(), json_vector(j[1])};
}

}  // namespace

IntMatrix json_matrix(const json& j, std::size_t rows) {
    if (j.is_array() && j.empty())
        return IntMatrix(rows, 0);
    IntMatrix m = json_matrix_free(j);
    if (m.rows() != rows)
        throw parse_error("matrix has " + std::to_string(m.rows()) + " rows, expected " + std::to_string(rows));
    return m;
}

json subgroup_json(const Subgroup& s) {
    json out = json::object();
    out["generators"] = matrix_json(s.canonical_form());
    return out;
}

json sog_element_json(const SogElement& x) {
    json coords = json::array();
    for (const Int& c : x.coords)
        coords.push_back(int_json(c));
    return json::array({x.idem, coords});
}

// ---- workspace parsing -----------------------------------------------------------

namespace {

template <class M>
const typename M::mapped_type& resolve(const M& map, const std::string& name, const char* what) {
    auto it = map.find(name);
    if (it == map.end())
        throw reference_error(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
}

Subgroup parse_subgroup_value(const json& v, const Workspace& ws, const GroupPtr& ambient) {
    if (v.is_string()) {
        const Subgroup& s = resolve(ws.subgroups, v.get<std::string>(), "subgroup");
        if (!s.ambient()->same_group(*ambient))
            throw validation_error("referenced subgroup lives in a different group");
        return s;
    }
    if (v.is_object())
        return Subgroup(ambient, json_matrix(field(v, "generators"), ambient->rank()));
    throw parse_error("a subgroup value is a name or an object with generators");
}

std::vector<Subgroup> parse_assignment(const json& table, const Workspace& ws, const GroupPtr& ambient,
                                       std::size_t count) {
    if (!table.is_object())
        throw parse_error("value table must be an object keyed by element index");
    std::vector<Subgroup> out;
    out.reserve(count);
    for (std::size_t e = 0; e < count; ++e) {
        auto it = table.find(std::to_string(e));
        if (it == table.end())
            throw validation_error("value table is missing element " + std::to_string(e));
        out.push_back(parse_subgroup_value(*it, ws, ambient));
    }
    if (table.size() != count)
        throw validation_error("value table has extra entries");
    return out;
}

MonoidMapData parse_map_data(const json& j) {
    MonoidMapData f;
    f.idem_map = json_int_vector(field(j, "idem"));
    const json& gm = j.value("group_maps", json::object());
    if (!gm.is_object())
        throw parse_error("group_maps must be an object keyed by source element");
    for (const auto& [key, val] : gm.items()) {
        int e;
        try {
            e = std::stoi(key);
        } catch (const std::exception&) {
            throw parse_error("group_maps keys must be element indices");
        }
        f.group_maps.emplace(e, json_matrix_free(val));
    }
    return f;
}

}  // namespace

Workspace parse_workspace(const std::vector<json>& docs) {
    static const std::set<std::string> kinds{"group",  "subgroup",     "lattice",  "semilattice", "monoid",
                                             "hom",    "presentation", "elements", "blueprint"};
    std::map<std::string, json> objs;
    for (const json& doc : docs) {
        if (!doc.is_object())
            throw parse_error("workspace document must be an object");
        if (doc.value("schema", std::string()) != "sogkit/1")
            throw parse_error("unsupported schema (want \"sogkit/1\")");
        const json& o = field(doc, "objects");
        if (!o.is_object())
            throw parse_error("'objects' must be an object");
        for (const auto& [name, body] : o.items()) {
            if (!body.is_object())
                throw parse_error("object '" + name + "' must be a JSON object");
            if (!kinds.count(field(body, "kind").get<std::string>()))
                throw parse_error("object '" + name + "' has unknown kind");
            if (!objs.emplace(name, body).second)
                throw validation_error("duplicate object name '" + name + "'");
        }
    }

    Workspace ws;
    auto phase = [&](const char* kind, auto&& fn) {
        for (const auto& [name, body] : objs)
            if (field(body, "kind").template get<std::string>() == kind)
                fn(name, body);
    };

    phase("group", [&](const std::string& name, const json& b) {
        std::size_t rank = json_count(field(b, "rank"));
        ws.groups.emplace(name, FgAbGroup::make(rank, json_matrix(field(b, "relations"), rank)));
    });
    phase("lattice", [&](const std::string& name, const json& b) {
        std::size_t size = json_count(field(b, "size"));
        std::vector<std::pair<int, int>> less;
        for (const auto& pr : field(b, "less")) {
            auto v = json_int_vector(pr);
            if (v.size() != 2)
                throw parse_error("poset relations are pairs [i,j]");
            less.emplace_back(v[0], v[1]);
        }
        ws.lattices.emplace(name, std::make_shared<FinDistLattice>(
                                      FinDistLattice::downsets_of(FinPoset(size, less))));
    });
    phase("semilattice", [&](const std::string& name, const json& b) {
        std::size_t size = b.contains("elements") ? field(b, "elements").size() : json_count(field(b, "size"));
        std::vector<int> table;
        const json& rows = field(b, "join");
        if (!rows.is_array() || rows.size() != size)
            throw parse_error("semilattice join table must have one row per element");
        for (const auto& row : rows) {
            auto v = json_int_vector(row);
            if (v.size() != size)
                throw parse_error("semilattice join table is not square");
            table.insert(table.end(), v.begin(), v.end());
        }
        int zero = field(b, "zero").get<int>();
        ws.semilattices.emplace(name, FinSemilattice(size, std::move(table), zero));
    });
    phase("monoid", [&](const std::string& name, const json& b) {
        std::size_t size = json_count(field(b, "size"));
        std::vector<int> table;
        const json& rows = field(b, "add");
        if (!rows.is_array() || rows.size() != size)
            throw parse_error("monoid table must have one row per element");
        for (const auto& row : rows) {
            auto v = json_int_vector(row);
            if (v.size() != size)
                throw parse_error("monoid table is not square");
            table.insert(table.end(), v.begin(), v.end());
        }
        ws.monoids.emplace(name, FinMonoid(size, std::move(table), field(b, "zero").get<int>()));
    });
    phase("subgroup", [&](const std::string& name, const json& b) {
        const GroupPtr& g = resolve(ws.groups, field(b, "group").get<std::string>(), "group");
        ws.subgroups.emplace(name, Subgroup(g, json_matrix(field(b, "generators"), g->rank())));
    });
    phase("hom", [&](const std::string& name, const json& b) {
        const LatticePtr& d = resolve(ws.lattices, field(b, "lattice").get<std::string>(), "lattice");
        const GroupPtr& g = resolve(ws.groups, field(b, "group").get<std::string>(), "group");
        ws.homs.emplace(name, SubgroupHom(d, g, parse_assignment(field(b, "table"), ws, g, d->size())));
    });
    phase("presentation", [&](const std::string& name, const json& b) {
        const FinSemilattice& lam = resolve(ws.semilattices, field(b, "semilattice").get<std::string>(),
                                            "semilattice");
        const GroupPtr& g = resolve(ws.groups, field(b, "group").get<std::string>(), "group");
        ws.presentations.emplace(
            name, SogPresentation{lam, g, parse_assignment(field(b, "assignment"), ws, g, lam.size())});
    });
    phase("elements", [&](const std::string& name, const json& b) {
        ElementSet set;
        set.presentation = field(b, "presentation").get<std::string>();
        resolve(ws.presentations, set.presentation, "presentation");
        for (const auto& item : field(b, "items"))
            set.items.push_back(json_sog_element(item));
        ws.element_sets.emplace(name, std::move(set));
    });
    phase("blueprint", [&](const std::string& name, const json& b) {
        BlueprintInput bp;
        bp.unital = b.value("unital", false);
        for (const auto& st : field(b, "stages")) {
            if (!st.is_object())
                throw parse_error("blueprint stages must be objects");
            BlueprintStageInput stage{SogPresentation{FinSemilattice(1, {0}, 0), FgAbGroup::free_group(0), {}},
                                      std::nullopt};
            if (st.contains("blocks")) {
                std::vector<BlockEntry> entries;
                for (const auto& blk : st["blocks"]) {
                    BlockEntry e;
                    e.infinite = blk.value("infinite", false);
                    if (!e.infinite)
                        e.order = json_int(field(blk, "cyclic"));
                    if (blk.contains("unit"))
                        e.unit = json_int(blk["unit"]);
                    entries.push_back(std::move(e));
                }
                BlockSum bs = block_monoid(entries);
                stage.pres = bs.pres;
                stage.unit = bs.unit;
            } else if (st.contains("presentation")) {
                stage.pres = resolve(ws.presentations, st["presentation"].get<std::string>(), "presentation");
                if (st.contains("unit"))
                    stage.unit = json_sog_element(st["unit"]);
            } else {
                throw parse_error("a blueprint stage needs 'blocks' or 'presentation'");
            }
            bp.stages.push_back(std::move(stage));
        }
        for (const auto& mp : field(b, "maps"))
            bp.maps.push_back(parse_map_data(mp));
        ws.blueprints.emplace(name, std::move(bp));
    });

    // names that were declared but never consumed by a phase cannot happen:
    // the kind set was checked up front.
    return ws;
}

Workspace parse_workspace_files(const std::vector<std::string>& paths) {
    std::vector<json> docs;
    for (const std::string& p : paths) {
        std::ifstream in(p);
        if (!in)
            throw parse_error("cannot open input file '" + p + "'");
        json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            throw parse_error("malformed JSON in '" + p + "': " + e.what());
        }
        docs.push_back(std::move(doc));
    }
    return parse_workspace(docs);
}

// ---- command dispatch ----------------------------------------------------------------

namespace {

int exit_code_for(const std::string& code) {
    static const std::set<std::string> property_failures{
        "not_pure",         "not_a_summand",      "map_not_homomorphism", "map_not_normalized",
        "stage_not_in_bbar", "purity_failure",     "not_regular",          "no_preimage",
        "internal_error",   "not_distributive"};
    if (code.rfind("family_invalid", 0) == 0)
        return 1;
    return property_failures.count(code) ? 1 : 2;
}

const std::string& need_arg(const std::vector<std::string>& args, std::size_t i, const char* what) {
    if (i >= args.size())
        throw parse_error(std::string("missing argument: ") + what);
    return args[i];
}

json hom_violations_json(const HomReport& rep) {
    json out = json::array();
    for (const auto& v : rep.violations)
        out.push_back(json{{"kind", v.kind == HomViolation::Kind::Join ? "join" : "meet"},
                           {"x", v.x},
                           {"y", v.y}});
    return out;
}

json semilattice_json(const FinSemilattice& s) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.size(); ++j)
            row.push_back(s.join(static_cast<int>(i), static_cast<int>(j)));
        rows.push_back(std::move(row));
    }
    return json{{"size", s.size()}, {"join", rows}, {"zero", s.zero()}};
}

json presentation_json(const SogPresentation& p) {
    json assign = json::object();
    for (std::size_t e = 0; e < p.lam.size(); ++e)
        assign[std::to_string(e)] = subgroup_json(p.groups[e]);
    return json{{"semilattice", semilattice_json(p.lam)},
                {"group", json{{"rank", p.ambient->rank()}, {"relations", matrix_json(p.ambient->relations())}}},
                {"assignment", assign}};
}

json descriptor_json(const AlgebraDescriptor& d) {
    json out = json::object();
    switch (d.kind) {
        case AlgebraDescriptor::Kind::MatCuntz:
            out["variant"] = "mat_cuntz";
            out["params"] = json::array({int_json(d.m), int_json(d.n)});
            break;
        case AlgebraDescriptor::Kind::MatOInf:
            out["variant"] = "mat_oinf";
            out["params"] = json::array({int_json(d.m)});
            break;
        case AlgebraDescriptor::Kind::CornerOInf:
            out["variant"] = "corner_oinf";
            out["params"] = json::array({int_json(d.k)});
            break;
        case AlgebraDescriptor::Kind::DirectSum: {
            out["variant"] = "direct_sum";
            json parts = json::array();
            for (const auto& s : d.summands)
                parts.push_back(descriptor_json(s));
            out["params"] = std::move(parts);
            break;
        }
    }
    out["display"] = d.display();
    return out;
}

json axiom_json(const AxiomReport& rep) {
    return json{{"regular", rep.regular}, {"conical", rep.conical},   {"refinement", rep.refinement},
                {"emb", rep.emb},         {"pur", rep.pur},           {"all", rep.all()},
                {"witness", rep.witness}};
}

int finish(json& cert, bool pass) {
    cert["status"] = pass ? "pass" : "fail";
    return pass ? 0 : 1;
}

}  // namespace

int run_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args,
                const CommandOptions& opts, json& cert) {
    cert = json::object();
    cert["schema"] = "sogkit/1";
    cert["verb"] = verb;
    try {
        if (verb == "check-hom") {
            const SubgroupHom& phi = resolve(ws.homs, need_arg(args, 0, "hom name"), "hom");
            HomReport rep = validate_hom(phi);
            cert["valid"] = rep.valid();
            cert["violations"] = hom_violations_json(rep);
            return finish(cert, rep.valid());
        }
        if (verb == "check-purity") {
            const SubgroupHom& phi = resolve(ws.homs, need_arg(args, 0, "hom name"), "hom");
            PurityReport rep = check_purity_report(phi);
            cert["pure"] = rep.pure;
            if (!rep.pure)
                cert["witness"] = json{{"u", rep.witness_u}, {"v", rep.witness_v}};
            if (opts.oracle) {
                bool agree = true;
                json pairs = json::array();
                for (auto [u, v] : phi.domain()->covers()) {
                    bool fast = is_pure(phi.value(u), phi.value(v));
                    bool slow = brute_purity(phi.value(u), phi.value(v), opts.budget);
                    pairs.push_back(json{{"u", u}, {"v", v}, {"fast", fast}, {"oracle", slow}});
                    agree = agree && fast == slow;
                }
                cert["oracle"] = json{{"agree", agree}, {"pairs", pairs}};
                if (!agree)
                    return finish(cert, false);
            }
            return finish(cert, rep.pure);
        }
        if (verb == "distr-envelope") {
            const SubgroupHom& phi = resolve(ws.homs, need_arg(args, 0, "hom name"), "hom");
            const Subgroup& a = resolve(ws.subgroups, need_arg(args, 1, "subgroup name"), "subgroup");
            EnvelopeResult res = distributive_envelope(a, phi);
            cert["envelope"] = subgroup_json(res.envelope);
            cert["iterations"] = res.claim_iterations;
            cert["contains_input"] = subgroup_leq(a, res.envelope);
            cert["distributive"] = is_distributive_element(res.envelope, phi);
            if (opts.oracle) {
                try {
                    bool slow = brute_distributive(res.envelope, phi, opts.budget);
                    cert["oracle"] = json{{"agree", slow}, {"distributive", slow}};
                    if (!slow)
                        return finish(cert, false);
                } catch (const Error& e) {
                    if (e.code() != "budget_exceeded")
                        throw;
                    cert["oracle"] = json{{"skipped", "budget exceeded"}};
                }
            }
            return finish(cert, true);
        }
        if (verb == "pure-approx") {
            const SubgroupHom& phi = resolve(ws.homs, need_arg(args, 0, "hom name"), "hom");
            const Subgroup& h = resolve(ws.subgroups, need_arg(args, 1, "subgroup name"), "subgroup");
            ApproxResult res = pure_approximation(phi, h);
            json table = json::array();
            for (std::size_t u = 0; u < res.certificate.size(); ++u)
                table.push_back(json{{"elem", u},
                                     {"h_meet_phi", subgroup_json(res.certificate[u].h_meet_phi)},
                                     {"psi", subgroup_json(res.certificate[u].psi_value)},
                                     {"phi", subgroup_json(res.certificate[u].phi_value)}});
            cert["certificate"] = std::move(table);
            cert["purity"] = res.purity.pure;
            return finish(cert, true);
        }
        if (verb == "pure-witness") {
            const Subgroup& a = resolve(ws.subgroups, need_arg(args, 0, "subgroup name"), "subgroup");
            const Subgroup& b = resolve(ws.subgroups, need_arg(args, 1, "subgroup name"), "subgroup");
            const Subgroup& h = resolve(ws.subgroups, need_arg(args, 2, "subgroup name"), "subgroup");
            PureWitness w = pure_witness(a, b, h);
            cert["a_prime"] = subgroup_json(w.a_prime);
            cert["b_prime"] = subgroup_json(w.b_prime);
            cert["complement"] = subgroup_json(w.complement);
            return finish(cert, true);
        }
        if (verb == "monoid-check") {
            const std::string& name = need_arg(args, 0, "monoid or presentation name");
            AxiomReport rep;
            const FinMonoid* table = nullptr;
            if (auto it = ws.monoids.find(name); it != ws.monoids.end()) {
                rep = check_axioms(it->second);
                table = &it->second;
                cert["axioms"] = axiom_json(rep);
            } else {
                const SogPresentation& p = resolve(ws.presentations, name, "presentation");
                rep = check_axioms(p);
                cert["axioms"] = axiom_json(rep);
                if (opts.oracle) {
                    auto mat = materialize(p, opts.budget.element_bound);
                    if (mat) {
                        auto fail = brute_refinement_failure(mat->monoid.size(), mat->monoid.table(), opts.budget);
                        bool agree = rep.refinement == !fail.has_value();
                        cert["oracle"] = json{{"agree", agree}, {"refinement", !fail.has_value()}};
                        if (!agree)
                            return finish(cert, false);
                    } else {
                        cert["oracle"] = json{{"skipped", "presentation is not finite within the budget"}};
                    }
                }
                return finish(cert, rep.all());
            }
            if (opts.oracle && table) {
                auto fail = brute_refinement_failure(table->size(), table->table(), opts.budget);
                bool agree = rep.refinement == !fail.has_value();
                cert["oracle"] = json{{"agree", agree}, {"refinement", !fail.has_value()}};
                if (!agree)
                    return finish(cert, false);
            }
            return finish(cert, rep.all());
        }
        if (verb == "monoid-decompose") {
            const FinMonoid& m = resolve(ws.monoids, need_arg(args, 0, "monoid name"), "monoid");
            MonoidPresentation mp = presentation_from_monoid(m);
            cert["idempotents"] = mp.dec.idem_carrier;
            json comps = json::array();
            for (const auto& c : mp.dec.components)
                comps.push_back(c);
            cert["components"] = std::move(comps);
            cert["semilattice"] = semilattice_json(mp.dec.lam);
            cert["presentation"] = presentation_json(mp.pres);
            json elems = json::array();
            for (const auto& e : mp.element_of)
                elems.push_back(sog_element_json(e));
            cert["element_map"] = std::move(elems);
            return finish(cert, true);
        }
        if (verb == "cover") {
            const SogPresentation& p =
                resolve(ws.presentations, need_arg(args, 0, "presentation name"), "presentation");
            const ElementSet& xs = resolve(ws.element_sets, need_arg(args, 1, "element set name"), "elements");
            CoverResult res = fg_submonoid_cover(p, xs.items);
            cert["cover"] = presentation_json(res.cover);
            cert["idem_to_parent"] = res.idem_to_parent;
            cert["axioms"] = axiom_json(check_axioms(res.cover));
            return finish(cert, true);
        }
        if (verb == "retract") {
            const SogPresentation& p =
                resolve(ws.presentations, need_arg(args, 0, "presentation name"), "presentation");
            RetractWitness w = retract_witness(p);
            json blocks = json::array();
            for (const auto& k : w.complements) {
                json inv = json::array();
                for (const Int& d : subgroup_invariants(k))
                    inv.push_back(int_json(d));
                blocks.push_back(json{{"generators", matrix_json(k.canonical_form())}, {"invariants", inv}});
            }
            cert["blocks"] = std::move(blocks);
            cert["atoms"] = w.b.blocks.size();
            cert["f_idem"] = w.f_idem;
            cert["g_idem"] = w.g_idem;
            cert["b"] = presentation_json(w.b.pres);
            return finish(cert, true);
        }
        if (verb == "blueprint") {
            const BlueprintInput& bp = resolve(ws.blueprints, need_arg(args, 0, "blueprint name"), "blueprint");
            Blueprint out = emit_blueprint(bp.stages, bp.maps, bp.unital);
            json stages = json::array();
            for (const auto& d : out.stages)
                stages.push_back(descriptor_json(d));
            cert["stages"] = std::move(stages);
            json maps = json::array();
            for (const auto& f : out.maps) {
                json gm = json::object();
                for (const auto& [e, mat] : f.group_maps)
                    gm[std::to_string(e)] = matrix_json(mat);
                maps.push_back(json{{"idem", f.idem_map}, {"group_maps", gm}});
            }
            cert["maps"] = std::move(maps);
            cert["unital"] = out.unital;
            cert["note"] = out.note;
            return finish(cert, true);
        }
        if (verb == "oracle-check") {
            const std::string& op = need_arg(args, 0, "oracle operation");
            bool fast = false, slow = false;
            if (op == "purity") {
                const Subgroup& a = resolve(ws.subgroups, need_arg(args, 1, "subgroup name"), "subgroup");
                const Subgroup& b = resolve(ws.subgroups, need_arg(args, 2, "subgroup name"), "subgroup");
                fast = is_pure(a, b);
                slow = brute_purity(a, b, opts.budget);
            } else if (op == "refinement") {
                const FinMonoid& m = resolve(ws.monoids, need_arg(args, 1, "monoid name"), "monoid");
                fast = check_axioms(m).refinement;
                slow = !brute_refinement_failure(m.size(), m.table(), opts.budget).has_value();
            } else if (op == "distributive") {
                const Subgroup& a = resolve(ws.subgroups, need_arg(args, 1, "subgroup name"), "subgroup");
                const SubgroupHom& phi = resolve(ws.homs, need_arg(args, 2, "hom name"), "hom");
                fast = is_distributive_element(a, phi);
                slow = brute_distributive(a, phi, opts.budget);
            } else {
                throw unknown_verb("oracle-check operation '" + op + "'");
            }
            cert["fast"] = fast;
            cert["oracle"] = slow;
            cert["agree"] = fast == slow;
            return finish(cert, fast == slow);
        }
        throw unknown_verb("'" + verb + "'");
    } catch (const Error& e) {
        cert["error"] = json{{"code", e.code()}, {"message", e.what()}};
        int code = exit_code_for(e.code());
        cert["status"] = code == 1 ? "fail" : "invalid";
        return code;
    }
}

}  // namespace sogkit

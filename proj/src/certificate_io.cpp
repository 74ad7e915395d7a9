#include "confl/certificate_io.hpp"

#include <sstream>

#include "confl/cops.hpp"

namespace confl {

namespace {

// ---------------------------------------------------------------------------
// rendering

void emit_steps(std::ostream& os, const std::string& tag, const StepSeq& steps) {
    for (const TermStep& st : steps)
        os << tag << ' ' << to_string(st.from) << ' ' << st.rule_id << ' '
           << st.position.to_string() << ' ' << to_string(st.to) << '\n';
}

void emit_peak(std::ostream& os, const PeakRef& peak) {
    os << "peak " << to_string(peak.source) << ' ' << peak.outer_id << ' ' << peak.inner_id
       << ' ' << peak.inner_pos.to_string() << ' ' << to_string(peak.left) << ' '
       << to_string(peak.right) << '\n';
}

void emit_termination(std::ostream& os, const std::string& tag,
                      const TerminationCertificate& cert) {
    if (std::holds_alternative<VacuousCert>(cert.method)) {
        os << tag << " vacuous\n";
        return;
    }
    if (const auto* lpo = std::get_if<LpoCert>(&cert.method)) {
        os << tag << " lpo";
        for (const auto& sym : lpo->precedence) os << ' ' << sym;
        os << '\n';
        return;
    }
    const auto& poly = std::get<PolyRemovalCert>(cert.method);
    os << tag << " poly\n";
    for (const PolyRemovalStep& step : poly.steps) {
        os << "poly-step\n";
        for (const auto& [sym, coeffs] : step.interpretation.coefficients) {
            os << "coeff " << sym;
            for (unsigned c : coeffs) os << ' ' << c;
            os << '\n';
        }
        os << "removes";
        for (const auto& id : step.removed_ids) os << ' ' << id;
        os << '\n';
    }
    os << "poly-end\n";
}

void emit_id_list(std::ostream& os, const std::string& tag,
                  const std::vector<std::string>& ids) {
    os << tag;
    for (const auto& id : ids) os << ' ' << id;
    os << '\n';
}

const char* shape_name(HotShape shape) {
    switch (shape) {
        case HotShape::SigmaJoin: return "sigma-join";
        case HotShape::BelowThenDev: return "below-then-dev";
        case HotShape::SigmaThenDev: return "sigma-then-dev";
        case HotShape::SigmaReach: return "sigma-reach";
        case HotShape::GuardedSigmaJoin: return "guarded-sigma-join";
        case HotShape::SigmaThenDevStrict: return "sigma-then-dev-strict";
    }
    return "?";
}

HotShape shape_from(const std::string& name) {
    if (name == "sigma-join") return HotShape::SigmaJoin;
    if (name == "below-then-dev") return HotShape::BelowThenDev;
    if (name == "sigma-then-dev") return HotShape::SigmaThenDev;
    if (name == "sigma-reach") return HotShape::SigmaReach;
    if (name == "guarded-sigma-join") return HotShape::GuardedSigmaJoin;
    if (name == "sigma-then-dev-strict") return HotShape::SigmaThenDevStrict;
    throw Error("unknown closing shape " + name);
}

void render_into(std::ostream& os, const Certificate& cert) {
    if (std::holds_alternative<OrthogonalCert>(cert.kind)) {
        os << "certificate orthogonal\n";
        os << "note YES by orthogonality (no critical pairs)\n";
    } else if (const auto* kb = std::get_if<KnuthBendixCert>(&cert.kind)) {
        os << "certificate kb\n";
        emit_termination(os, "termination", kb->termination);
        for (const auto& [peak, join] : kb->joins) {
            emit_peak(os, peak);
            os << "meet " << to_string(join.meet) << '\n';
            emit_steps(os, "lstep", join.from_left);
            emit_steps(os, "rstep", join.from_right);
        }
    } else if (const auto* sc = std::get_if<StronglyClosedCert>(&cert.kind)) {
        os << "certificate sc\n";
        for (const ScPeakProof& proof : sc->peaks) {
            emit_peak(os, proof.peak);
            emit_steps(os, "lred", proof.left_reduction);
            if (proof.right_step) emit_steps(os, "rone", {*proof.right_step});
            emit_steps(os, "rred", proof.right_reduction);
            if (proof.left_step) emit_steps(os, "lone", {*proof.left_step});
        }
    } else if (const auto* dc = std::get_if<DevClosedCert>(&cert.kind)) {
        os << "certificate dc\n";
        for (const PeakRef& peak : dc->peaks) emit_peak(os, peak);
    } else if (const auto* hot = std::get_if<HotCert>(&cert.kind)) {
        os << "certificate hot\n";
        emit_id_list(os, "sigma", hot->sigma);
        emit_termination(os, "termination", hot->sigma_termination);
        os << "precedence";
        for (const auto& [id, level] : hot->precedence.level) os << ' ' << id << '=' << level;
        os << '\n';
        for (const HotPeakProof& proof : hot->peaks) {
            emit_peak(os, proof.peak);
            os << "shape " << shape_name(proof.shape) << (proof.mirrored ? " mirrored" : "")
               << '\n';
            os << "meet " << to_string(proof.meet) << '\n';
            emit_steps(os, "step", proof.steps);
            emit_steps(os, "rstep", proof.right_steps);
            emit_steps(os, "gstep", proof.guard);
            emit_id_list(os, "devrules", proof.dev_rules);
        }
    } else if (const auto* cpcs = std::get_if<CpcsCert>(&cert.kind)) {
        os << "certificate " << (cpcs->ars ? "cpcs-ars" : "cpcs") << '\n';
        emit_id_list(os, "sigma", cpcs->sigma);
        emit_termination(os, "relative-termination", cpcs->relative_termination);
        for (const ConvProof& proof : cpcs->closes) {
            emit_peak(os, proof.peak);
            os << "meet " << to_string(proof.conversion.meet) << '\n';
            emit_steps(os, "lstep", proof.conversion.from_left);
            emit_steps(os, "rstep", proof.conversion.from_right);
        }
        os << "sub\n";
        render_into(os, *cpcs->subsystem_proof);
    } else if (const auto* gsc = std::get_if<GscCert>(&cert.kind)) {
        os << "certificate gsc\n";
        emit_id_list(os, "sigma", gsc->sigma);
        for (const ConvProof& proof : gsc->closes) {
            emit_peak(os, proof.peak);
            os << "meet " << to_string(proof.conversion.meet) << '\n';
            emit_steps(os, "lstep", proof.conversion.from_left);
            emit_steps(os, "rstep", proof.conversion.from_right);
        }
        os << "sub\n";
        render_into(os, Certificate{gsc->strongly_closed});
    }
    os << "end\n";
}

// ---------------------------------------------------------------------------
// parsing

struct Lines {
    std::vector<std::vector<std::string>> rows;
    std::size_t at = 0;

    explicit Lines(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::vector<std::string> tokens;
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) rows.push_back(std::move(tokens));
        }
    }

    bool done() const { return at >= rows.size(); }
    const std::vector<std::string>& peek() const {
        if (done()) throw Error("unexpected end of certificate");
        return rows[at];
    }
    std::vector<std::string> take() {
        auto row = peek();
        ++at;
        return row;
    }
    bool next_is(const std::string& tag) const { return !done() && peek()[0] == tag; }
};

struct Reader {
    Lines& lines;
    const Trs& trs;

    Term term(const std::string& text) const {
        return parse_term(text, trs.signature(), {});
    }

    TermStep step(const std::vector<std::string>& row) const {
        if (row.size() != 5) throw Error("malformed step line");
        return TermStep{term(row[1]), row[2], Position::parse(row[3]), term(row[4]), true};
    }

    StepSeq steps(const std::string& tag) {
        StepSeq out;
        while (lines.next_is(tag)) out.push_back(step(lines.take()));
        return out;
    }

    PeakRef peak(const std::vector<std::string>& row) const {
        if (row.size() != 7) throw Error("malformed peak line");
        return PeakRef{term(row[1]), row[2], row[3], Position::parse(row[4]), term(row[5]),
                       term(row[6])};
    }

    Term meet() {
        auto row = lines.take();
        if (row[0] != "meet" || row.size() != 2) throw Error("expected meet line");
        return term(row[1]);
    }

    TerminationCertificate termination(const std::string& tag) {
        auto row = lines.take();
        if (row[0] != tag || row.size() < 2) throw Error("expected " + tag + " line");
        if (row[1] == "vacuous") return TerminationCertificate{VacuousCert{}};
        if (row[1] == "lpo") {
            LpoCert lpo;
            lpo.precedence.assign(row.begin() + 2, row.end());
            return TerminationCertificate{std::move(lpo)};
        }
        if (row[1] != "poly") throw Error("unknown termination method " + row[1]);
        PolyRemovalCert poly;
        while (lines.next_is("poly-step")) {
            lines.take();
            PolyRemovalStep step;
            while (lines.next_is("coeff")) {
                auto c = lines.take();
                std::vector<unsigned> coeffs;
                for (std::size_t i = 2; i < c.size(); ++i)
                    coeffs.push_back(static_cast<unsigned>(std::stoul(c[i])));
                step.interpretation.coefficients[c[1]] = std::move(coeffs);
            }
            auto rem = lines.take();
            if (rem[0] != "removes") throw Error("expected removes line");
            step.removed_ids.assign(rem.begin() + 1, rem.end());
            poly.steps.push_back(std::move(step));
        }
        auto fin = lines.take();
        if (fin[0] != "poly-end") throw Error("expected poly-end");
        return TerminationCertificate{std::move(poly)};
    }

    std::vector<std::string> id_list(const std::string& tag) {
        auto row = lines.take();
        if (row[0] != tag) throw Error("expected " + tag + " line");
        return std::vector<std::string>(row.begin() + 1, row.end());
    }

    Certificate certificate() {
        auto head = lines.take();
        if (head[0] != "certificate" || head.size() < 2) throw Error("expected certificate line");
        const std::string kind = head[1];
        Certificate out{OrthogonalCert{}};
        if (kind == "orthogonal") {
            out.kind = OrthogonalCert{};
            while (lines.next_is("note")) lines.take();
        } else if (kind == "kb") {
            KnuthBendixCert kb;
            kb.termination = termination("termination");
            while (lines.next_is("peak")) {
                PeakRef ref = peak(lines.take());
                JoinProof join;
                join.meet = meet();
                join.from_left = steps("lstep");
                join.from_right = steps("rstep");
                kb.joins.emplace_back(std::move(ref), std::move(join));
            }
            out.kind = std::move(kb);
        } else if (kind == "sc") {
            StronglyClosedCert sc;
            while (lines.next_is("peak")) {
                ScPeakProof proof{peak(lines.take()), {}, std::nullopt, {}, std::nullopt};
                proof.left_reduction = steps("lred");
                if (lines.next_is("rone")) proof.right_step = step(lines.take());
                proof.right_reduction = steps("rred");
                if (lines.next_is("lone")) proof.left_step = step(lines.take());
                sc.peaks.push_back(std::move(proof));
            }
            out.kind = std::move(sc);
        } else if (kind == "dc") {
            DevClosedCert dc;
            while (lines.next_is("peak")) dc.peaks.push_back(peak(lines.take()));
            out.kind = std::move(dc);
        } else if (kind == "hot") {
            HotCert hot;
            hot.sigma = id_list("sigma");
            hot.sigma_termination = termination("termination");
            auto prec_row = lines.take();
            if (prec_row[0] != "precedence") throw Error("expected precedence line");
            for (std::size_t i = 1; i < prec_row.size(); ++i) {
                const auto eq = prec_row[i].find('=');
                if (eq == std::string::npos) throw Error("malformed precedence entry");
                hot.precedence.level[prec_row[i].substr(0, eq)] =
                    static_cast<unsigned>(std::stoul(prec_row[i].substr(eq + 1)));
            }
            while (lines.next_is("peak")) {
                HotPeakProof proof;
                proof.peak = peak(lines.take());
                auto shape_row = lines.take();
                if (shape_row[0] != "shape") throw Error("expected shape line");
                proof.shape = shape_from(shape_row[1]);
                proof.mirrored = shape_row.size() > 2 && shape_row[2] == "mirrored";
                proof.meet = meet();
                proof.steps = steps("step");
                proof.right_steps = steps("rstep");
                proof.guard = steps("gstep");
                proof.dev_rules = id_list("devrules");
                hot.peaks.push_back(std::move(proof));
            }
            out.kind = std::move(hot);
        } else if (kind == "cpcs" || kind == "cpcs-ars") {
            CpcsCert cpcs;
            cpcs.ars = kind == "cpcs-ars";
            cpcs.sigma = id_list("sigma");
            cpcs.relative_termination = termination("relative-termination");
            while (lines.next_is("peak")) {
                ConvProof proof{peak(lines.take()), ConversionEvidence{}};
                proof.conversion.meet = meet();
                proof.conversion.from_left = steps("lstep");
                proof.conversion.from_right = steps("rstep");
                cpcs.closes.push_back(std::move(proof));
            }
            auto sub = lines.take();
            if (sub[0] != "sub") throw Error("expected sub line");
            cpcs.subsystem_proof = std::make_shared<Certificate>(certificate());
            out.kind = std::move(cpcs);
        } else if (kind == "gsc") {
            GscCert gsc;
            gsc.sigma = id_list("sigma");
            while (lines.next_is("peak")) {
                ConvProof proof{peak(lines.take()), ConversionEvidence{}};
                proof.conversion.meet = meet();
                proof.conversion.from_left = steps("lstep");
                proof.conversion.from_right = steps("rstep");
                gsc.closes.push_back(std::move(proof));
            }
            auto sub = lines.take();
            if (sub[0] != "sub") throw Error("expected sub line");
            Certificate inner = certificate();
            if (!std::holds_alternative<StronglyClosedCert>(inner.kind))
                throw Error("gsc subsystem proof must be a strong closedness certificate");
            gsc.strongly_closed = std::get<StronglyClosedCert>(inner.kind);
            out.kind = std::move(gsc);
        } else {
            throw Error("unknown certificate kind " + kind);
        }
        auto fin = lines.take();
        if (fin[0] != "end") throw Error("expected end line");
        return out;
    }
};

}  // namespace

std::string render_certificate(const Certificate& cert) {
    std::ostringstream os;
    render_into(os, cert);
    return os.str();
}

Certificate parse_certificate(const std::string& text, const Trs& trs) {
    Lines lines(text);
    Reader reader{lines, trs};
    return reader.certificate();
}

std::string render_witness(const Witness& witness) {
    std::ostringstream os;
    os << "witness\n";
    const CriticalPeak& p = witness.peak;
    os << "peak " << to_string(p.source) << ' ' << p.outer.rule.id << ' ' << p.inner.rule.id
       << ' ' << p.inner.position.to_string() << ' ' << to_string(p.left) << ' '
       << to_string(p.right) << '\n';
    auto emit_matcher = [&](const std::string& tag, const Substitution& sigma) {
        os << tag;
        for (const auto& [v, img] : sigma.bindings()) os << ' ' << v << '=' << to_string(img);
        os << '\n';
    };
    emit_matcher("outer-matcher", p.outer.matcher);
    emit_matcher("inner-matcher", p.inner.matcher);
    os << "nfs " << to_string(witness.nf_left) << ' ' << to_string(witness.nf_right) << '\n';
    emit_steps(os, "lstep", witness.steps_left);
    emit_steps(os, "rstep", witness.steps_right);
    os << "end\n";
    return os.str();
}

Witness parse_witness(const std::string& text, const Trs& trs) {
    Lines lines(text);
    Reader reader{lines, trs};
    auto head = lines.take();
    if (head[0] != "witness") throw Error("expected witness line");
    auto peak_row = lines.take();
    PeakRef ref = reader.peak(peak_row);
    auto matcher = [&](const std::string& tag) {
        auto row = lines.take();
        if (row[0] != tag) throw Error("expected " + tag + " line");
        Substitution sigma;
        for (std::size_t i = 1; i < row.size(); ++i) {
            const auto eq = row[i].find('=');
            if (eq == std::string::npos) throw Error("malformed matcher entry");
            sigma.bind(row[i].substr(0, eq), reader.term(row[i].substr(eq + 1)));
        }
        return sigma;
    };
    Substitution outer_sigma = matcher("outer-matcher");
    Substitution inner_sigma = matcher("inner-matcher");
    auto nfs = lines.take();
    if (nfs[0] != "nfs" || nfs.size() != 3) throw Error("expected nfs line");

    const Rule* outer_rule = trs.rule_by_id(ref.outer_id);
    const Rule* inner_rule = trs.rule_by_id(ref.inner_id);
    if (!outer_rule || !inner_rule) throw Error("witness names unknown rules");
    CriticalPeak peak{
        ref.source,
        RedexOccurrence{Position(), *outer_rule, std::move(outer_sigma)},
        RedexOccurrence{ref.inner_pos, *inner_rule, std::move(inner_sigma)},
        ref.left,
        ref.right,
        ref.inner_pos.is_root() ? CriticalPeak::Kind::Overlay : CriticalPeak::Kind::OuterInner,
        false,
    };
    Witness witness{std::move(peak), reader.term(nfs[1]), reader.term(nfs[2]), {}, {}};
    witness.steps_left = reader.steps("lstep");
    witness.steps_right = reader.steps("rstep");
    auto fin = lines.take();
    if (fin[0] != "end") throw Error("expected end line");
    return witness;
}

}  // namespace confl

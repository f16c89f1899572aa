#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "qdkit/cayley.hpp"
#include "qdkit/errors.hpp"
#include "qdkit/finrep.hpp"
#include "qdkit/mflef.hpp"
#include "qdkit/qdnum.hpp"
#include "qdkit/regrep.hpp"

namespace py = pybind11;
using namespace qdkit;

namespace {

FreeWord generator(const std::string& s) {
  const FreeWord w = FreeWord::parse(s);
  if (w.length() != 1) throw PreconditionError("expected one of a, b, A, B");
  return w;
}

std::shared_ptr<const FiniteGroup> namedGroup(const std::string& kind, std::uint32_t n) {
  if (kind == "cyclic") return std::make_shared<const FiniteGroup>(cyclicGroup(n));
  if (kind == "heisenberg-mod") return std::make_shared<const FiniteGroup>(heisenbergModGroup(n));
  throw PreconditionError("group kind must be 'cyclic' or 'heisenberg-mod'");
}

py::dict mfToDict(const MFWitnessSequence& w) {
  py::list stages;
  for (const auto& s : w.stages) {
    py::dict d;
    d["index"] = s.index;
    d["modulus"] = s.modulus;
    d["status"] = toString(s.status);
    d["block_dim"] = s.blockDim;
    d["gamma_params"] = s.gamma.params;
    d["discrepancy"] = s.gamma.discrepancy;
    d["tolerance"] = s.gamma.tolerance;
    stages.append(d);
  }
  py::list probes;
  for (const auto& t : w.probes) {
    py::list traj;
    for (const auto& ps : t.stages) {
      py::dict d;
      d["computed"] = ps.computed;
      d["norm"] = ps.norm;
      d["eta_norm"] = ps.etaNorm;
      d["covered"] = ps.covered;
      d["central_image"] = ps.centralImage;
      traj.append(d);
    }
    py::dict d;
    d["label"] = t.label;
    d["class"] = toString(t.cls);
    d["stages"] = traj;
    probes.append(d);
  }
  py::dict out;
  out["instance"] = w.instance;
  out["completed_stages"] = w.completedStages();
  out["stages"] = stages;
  out["probes"] = probes;
  if (w.stages.size() >= 3) {
    const auto rep = separationReport(w);
    py::dict verdicts;
    for (const auto& v : rep.probes) verdicts[py::str(v.label)] = v.ok;
    out["separation_ok"] = rep.ok;
    out["probe_ok"] = verdicts;
  } else {
    out["separation_ok"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Commutator moduli, paradoxical bounds and finite-quotient witnesses";

  auto base = py::register_exception<Error>(m, "QdkitError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ResourceCapError>(m, "ResourceCapError", base.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
  py::register_exception<ExactnessError>(m, "ExactnessError", base.ptr());
  py::register_exception<VerificationError>(m, "VerificationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("sphere_sizes", [](std::size_t radius) {
    const auto ball = freeBall(radius);
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= radius; ++n) out.push_back(ball.sphereSize(n));
    return out;
  }, py::arg("radius"));
  m.def("ball_words", [](std::size_t radius) {
    std::vector<std::string> out;
    const auto ball = freeBall(radius);
    for (const auto& w : ball.elements()) out.push_back(w.str());
    return out;
  }, py::arg("radius"), "Words of the ball in shortlex order; index i is basis vector i.");

  py::class_<FreeTruncatedRep>(m, "TruncatedRep")
      .def(py::init([](std::size_t radius) { return buildTruncatedRep(radius); }), py::arg("radius"))
      .def_property_readonly("radius", &FreeTruncatedRep::radius)
      .def_property_readonly("dim", &FreeTruncatedRep::dim)
      .def("xi", [](const FreeTruncatedRep& r, std::size_t n) { return xiVector(n, r.ball()).vector; },
           py::arg("n"))
      .def("commutator_norm",
           [](const FreeTruncatedRep& r, const std::string& s, const Mat& vectors, double tol) {
             NormOptions opt;
             opt.tol = tol;
             const auto p = FiniteProjection::fromSpanningVectors(vectors, r.ball());
             return commutatorNorm(r, generator(s), p, opt).value;
           },
           py::arg("generator"), py::arg("vectors"), py::arg("tol") = 1e-10,
           "||[lambda_s, P]|| where P projects onto the span of the columns.")
      .def("rank_one_commutator_norm",
           [](const FreeTruncatedRep& r, const std::string& s, const Vec& v) {
             return rankOneCommutatorNorm(r.op(generator(s)), v);
           },
           py::arg("generator"), py::arg("vector"))
      .def("pairing", [](const FreeTruncatedRep& r, const std::string& s, std::size_t n) {
             return pairingNumeric(r, generator(s), n);
           },
           py::arg("generator"), py::arg("n"));

  m.def("pairing_closed_form", &pairingClosedForm, py::arg("n"));
  m.def("xi_commutator_closed_form", &xiCommutatorClosedForm, py::arg("n"));

  m.def("verify_standard_certificate", [](std::size_t radius) {
    const auto r = verifyCertificate(f2StandardCertificate(), radius);
    py::dict d;
    d["passed"] = r.passed();
    d["checked"] = r.checked;
    d["violations"] = r.violations.size();
    return d;
  }, py::arg("radius"));
  m.def("cf_lower_bound", []() {
    const auto lb = cfLowerBound(f2StandardCertificate());
    return py::make_tuple(lb.numerator, lb.denominator);
  }, "The bound 1/(n+m-2) of the standard certificate as (numerator, denominator).");
  m.def("cf_upper_search", [](std::size_t dim) {
    const std::vector<FreeWord> f{FreeWord::parse("a"), FreeWord::parse("b")};
    const auto r = cfUpperSearch(dim, f);
    py::dict d;
    d["value"] = r.bestValue;
    d["profile"] = r.profile;
    d["sweeps"] = r.sweeps;
    d["converged"] = r.converged;
    return d;
  }, py::arg("dim"));

  m.def("trace_lemma_check", [](const Mat& x, const Mat& q) {
    const auto r = traceLemmaCheck(x, q);
    py::dict d;
    d["lhs"] = r.lhs;
    d["bound"] = r.bound;
    d["rank"] = r.rank;
    d["ok"] = r.ok;
    return d;
  }, py::arg("x"), py::arg("q"));
  m.def("trace_lemma_trials", [](std::size_t trials, std::uint64_t seed, std::size_t maxDim) {
    const auto t = runTraceLemmaTrials(trials, seed, maxDim);
    py::dict d;
    d["violations"] = t.violations;
    d["max_ratio"] = t.maxRatio;
    d["max_dim"] = t.maxDim;
    return d;
  }, py::arg("trials"), py::arg("seed") = 0, py::arg("max_dim") = 40);
  m.def("random_audit", [](std::size_t radius, std::size_t trials, std::uint64_t seed,
                           std::size_t maxRank, std::size_t support) {
    const auto b = runRandomAudit(buildTruncatedRep(radius), f2StandardCertificate(), trials, seed,
                                  maxRank, support);
    py::dict d;
    d["min_epsilon"] = b.minEpsilon;
    d["min_slack"] = b.minSlack;
    d["violations"] = b.violations;
    return d;
  }, py::arg("radius"), py::arg("trials"), py::arg("seed") = 0, py::arg("max_rank") = 5,
     py::arg("support") = 4);

  m.def("monomial_norm_minus_identity",
        [](std::vector<std::uint32_t> perm, const std::vector<std::pair<std::int64_t, std::int64_t>>& phases) {
          std::vector<Phase> ph;
          for (const auto& [num, den] : phases) ph.emplace_back(Rotation(num, den));
          return monomialNormMinusIdentity(MonomialMatrix(std::move(perm), std::move(ph)));
        },
        py::arg("perm"), py::arg("phases"),
        "||M - 1|| for the matrix with phase exp(2 pi i num/den) at (perm[j], j).");

  m.def("induced_separation",
        [](const std::string& kind, std::uint32_t n, ElementId h, std::int64_t k) {
          const auto g = namedGroup(kind, n);
          const auto gamma = CentralCharacter::cyclic(g, h, k);
          const auto rep = induceCentral(gamma);
          const auto sep = checkInducedSeparation(rep, gamma.elements());
          py::dict d;
          d["dim"] = rep.dim();
          d["min_separation"] = sep.minNorm;
          d["restriction_ok"] = checkInducedRestriction(rep, gamma);
          return d;
        },
        py::arg("kind"), py::arg("n"), py::arg("generator"), py::arg("k"),
        "Induce exp(2 pi i k j/ord) on <generator> in a named group and measure separation.");

  m.def("mf_run",
        [](const std::string& instance, std::vector<std::uint64_t> moduli,
           std::vector<std::int64_t> characters, std::uint32_t prime, std::size_t cap) {
          const MFConfig config{std::move(moduli), std::move(characters), cap};
          if (instance == "heisenberg") {
            return mfToDict(runMF(HeisenbergInstance{}, config, defaultHeisenbergProbes()));
          }
          if (instance == "abels") {
            return mfToDict(runMF(AbelsInstance{prime}, config, defaultAbelsProbes(prime)));
          }
          throw PreconditionError("instance must be 'abels' or 'heisenberg'");
        },
        py::arg("instance"), py::arg("moduli"), py::arg("characters") = std::vector<std::int64_t>{},
        py::arg("prime") = 2, py::arg("cap") = kDefaultDimensionCap);

  m.def("lef_witness", [](std::size_t radius, std::vector<std::uint64_t> schedule) {
    const auto ball = freeBall(radius);
    const std::vector<FreeWord> f(ball.elements().begin(), ball.elements().end());
    if (schedule.empty()) schedule = defaultLefSchedule();
    const auto w = lefWitnessSearch(f, schedule);
    const auto u = lefToUnitaries(w);
    std::ostringstream text;
    writeLefWitness(text, w);
    py::dict d;
    d["modulus"] = w.modulus;
    d["group_order"] = w.group->order();
    d["verified"] = verifyLefWitness(w).ok();
    d["min_distance"] = u.minPairwiseDistance;
    d["witness"] = text.str();
    return d;
  }, py::arg("radius"), py::arg("schedule") = std::vector<std::uint64_t>{});
}

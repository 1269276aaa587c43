//! End-to-end commands producing [`Report`]s, shared by the command-line
//! tool and the acceptance tests.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use crate::classes::{build_class_table, ClassTable, ClassTableOptions, Order13Fusion, ReferenceOrbit};
use crate::data::triality_data;
use crate::element::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};
use crate::matrix::{encode_atlas_string, eval_word, GroupWord, Mat};
use crate::perm::PermGroupFile;
use crate::report::Report;
use crate::store::{load_or_build, CacheStatus};
use crate::suite::census::double_coset_census;
use crate::suite::coverage::{verify_coset_covered, CoverageCriterion};
use crate::suite::orbital::orbital_graphs;
use crate::suite::perm_action::PermAction;
use crate::suite::psl::{build_psl_coset_action, counterexample_search, COSET_DEGREE};
use crate::suite::remark_b::remark_b_analysis;
use crate::suite::search::{derangement_search, fixne1_search, fixne1_sweep};
use crate::triality::{h_structure, phase_rng, Phase, Triality, TrialityConfig, GROUP_ORDER, H_ORDER, SYLOW_DEGREE};

pub const EXPECTED_DOUBLE_COSETS: usize = 78_366;
pub const EXPECTED_COVERED: usize = 1;
pub const EXPECTED_NORMALIZER: usize = 128;
pub const EXPECTED_SURVIVORS: usize = 4;

/// Largest point stabilizer enumerated by the permutation searches.
pub const STABILIZER_CAP: usize = 1_000_000;

/// Rough resident size of the Sylow orbit table in MiB.
pub fn sylow_table_mib(store_payloads: bool) -> usize {
    let per_point = if store_payloads { 16 + 16 + 5 + 64 } else { 16 + 16 + 5 };
    SYLOW_DEGREE * per_point / (1 << 20) + 64
}

/// The built group, with the class table and fusion data computed on demand.
pub struct Session {
    pub cfg: TrialityConfig,
    pub t: Triality,
    pub cache: CacheStatus,
    pub build_seconds: f64,
    classes: Option<ClassTable>,
}

impl Session {
    pub fn open(cfg: TrialityConfig, cache_dir: Option<&Path>, mem_budget_mib: Option<usize>) -> Result<Self> {
        let need = sylow_table_mib(cfg.store_payloads);
        if let Some(budget) = mem_budget_mib {
            if need > budget {
                let hint = if cfg.store_payloads { "; rerun with --low-mem" } else { "" };
                return Err(Error::Budget(format!("the Sylow orbit needs about {need} MiB, budget is {budget} MiB{hint}")));
            }
        }
        let started = Instant::now();
        let (t, cache) = load_or_build(&cfg, cache_dir)?;
        Ok(Session { cfg, t, cache, build_seconds: started.elapsed().as_secs_f64(), classes: None })
    }

    pub fn class_table(&mut self) -> Result<&ClassTable> {
        self.ensure_classes()?;
        Ok(self.classes())
    }

    /// Builds the class table once.
    pub fn ensure_classes(&mut self) -> Result<()> {
        if self.classes.is_none() {
            let t = &self.t;
            let table = build_class_table(
                &t.g.gens,
                &t.g.gens_inv,
                &t.g.identity,
                GROUP_ORDER,
                t.h.elements(),
                Some(ReferenceOrbit::new(t.action.points())),
                phase_rng(self.cfg.seed, Phase::Classes),
                &ClassTableOptions::default(),
            )?;
            self.classes = Some(table);
        }
        Ok(())
    }

    /// The class table; panics unless [`Session::ensure_classes`] ran.
    pub fn classes(&self) -> &ClassTable {
        self.classes.as_ref().expect("class table built")
    }

    /// Evaluates a word in `a`, `b`, defaulting to the bundled word `x`.
    pub fn element(&self, word: Option<&str>) -> Result<(Mat, String)> {
        let data = triality_data();
        match word {
            None => Ok((self.t.g.x, data.word_text("x").unwrap_or_default().to_string())),
            Some(w) => Ok((eval_word(&GroupWord::parse(w, &data.names)?, &self.t.g.gens)?, w.to_string())),
        }
    }

    /// `x ∈ H`, decided by the element list and by a chain of `H`, which must agree.
    pub fn in_h(&self, x: &Mat) -> Result<bool> {
        let by_list = self.t.h.contains(x);
        let chain = self.t.h_chain(self.cfg.seed)?;
        let by_chain = chain.contains(&self.t.action.perm_of(x)?);
        if by_list != by_chain {
            return Err(Error::Certification("membership in H differs between element list and chain".into()));
        }
        Ok(by_list)
    }
}

pub fn build_report(s: &mut Session) -> Result<Report> {
    let mut r = Report::new("build");
    let hs = h_structure(&s.t.g, &s.t.h, &s.t.c)?;
    let order = s.t.chain.order();
    r.line(format!("cache: {:?}", s.cache));
    r.line(format!("reference action degree {} (minimal among scanned seeds)", s.t.action.degree()));
    r.line(format!("|G| = {order}, base {:?}, basic orbits {:?}", s.t.chain.base(), s.t.chain.basic_orbit_lengths()));
    r.line(format!("order(ab) = {}", s.t.g.s.element_order(DEFAULT_ORDER_CAP)?));
    r.line(format!("Sylow 13 orbit: {} points", s.t.sylow.len()));
    r.line(format!("|H| = {}, s^c = s^{}, order(c) = {}", s.t.h.len(), hs.exponent, hs.c_order));
    let table = s.class_table()?;
    r.line(format!("class table: {} classes of orders 2 and 4, tags separate: {}", table.records.len(), table.tags_separate));
    let table_passed = table.tags_separate
        && table.records.iter().all(|c| c.centralizer_order * c.size as u128 == GROUP_ORDER);
    r.passed = order == GROUP_ORDER
        && s.t.sylow.len() == SYLOW_DEGREE
        && s.t.h.len() == H_ORDER
        && hs.c_order == 4
        && table_passed;
    r.order_histogram = Some(hs.order_histogram.iter().copied().collect());
    r.detail("group_order", &order.to_string());
    r.detail("reference_degree", &s.t.action.degree());
    r.detail("scanned_seeds", &s.t.action.scanned);
    r.detail("base", &s.t.chain.base());
    r.detail("basic_orbits", &s.t.chain.basic_orbit_lengths());
    r.detail("sylow_points", &s.t.sylow.len());
    r.detail("h_order", &s.t.h.len());
    r.detail("c", &encode_atlas_string(&s.t.c)?);
    r.detail("s_c_exponent", &hs.exponent);
    r.detail("build_seconds", &s.build_seconds);
    r.detail("cache", &format!("{:?}", s.cache));
    Ok(r)
}

pub fn classes_report(s: &mut Session) -> Result<Report> {
    let table = s.class_table()?;
    let mut r = Report::new("classes");
    for l in table.dump().lines() {
        r.line(l);
    }
    r.passed = table.tags_separate;
    r.detail("tags_separate", &table.tags_separate);
    r.detail("sampling", &table.stats);
    r.detail("dump", &table.dump());
    Ok(r)
}

/// Checks every element of `Hx`. Rejects `x ∈ H`.
pub fn theorem_report(s: &mut Session, word: Option<&str>) -> Result<Report> {
    let (x, text) = s.element(word)?;
    if s.in_h(&x)? {
        return Err(Error::Domain(format!("x = {text} lies in H; the coset Hx is H itself")));
    }
    let c = s.t.c;
    s.ensure_classes()?;
    let table = s.classes();
    let c_class = table.classify(&c, 4).ok_or_else(|| Error::Certification("c is in no known class".into()))?;
    let crit = CoverageCriterion::new(table, &s.t.h)?;
    let rep = verify_coset_covered(&s.t.h, &x, &crit, &text)?;
    let paper_shape = rep.elements.iter().all(|e| e.order == 13 || (e.order == 4 && e.class == Some(c_class)));
    let mut r = Report::new("verify-theorem");
    r.bad_coset_word = Some(text.clone());
    r.order_histogram = Some(rep.order_histogram.clone());
    r.passed = rep.covered && !rep.x_in_h && paper_shape;
    if r.passed {
        r.line(format!("x = {text}: x not in H; all {} elements covered", rep.elements.len()));
    } else if let Some(bad) = rep.first_uncovered() {
        let y = s.t.h.elements()[bad.h_index].mat_mul(&x);
        r.line(format!(
            "x = {text}: element h[{}]*x of order {} is not conjugate into H: {}",
            bad.h_index,
            bad.order,
            encode_atlas_string(&y)?
        ));
    } else {
        r.line(format!("x = {text}: covered, but not only by order 13 and c's class of order 4"));
    }
    r.line(format!("orders in Hx: {:?}", rep.order_histogram));
    r.line(format!("c's class has centralizer order {}", table.records[c_class].centralizer_order));
    r.detail("coset", &rep);
    r.detail("c_class", &c_class);
    r.detail("c_centralizer_order", &table.records[c_class].centralizer_order.to_string());
    Ok(r)
}

pub fn census_report(s: &mut Session, word: Option<&str>) -> Result<Report> {
    let (x, text) = s.element(word)?;
    s.ensure_classes()?;
    let table = s.classes();
    let crit = CoverageCriterion::new(table, &s.t.h)?;
    let census = double_coset_census(&s.t, &crit, &x)?;
    let mut r = Report::new("census");
    r.orbit_count = Some(census.orbit_count);
    r.covered_orbits = Some(census.covered_orbits.iter().map(|o| o.word.clone()).collect());
    r.bad_coset_word = Some(text);
    r.passed = census.orbit_count == EXPECTED_DOUBLE_COSETS
        && census.covered_orbits.len() == EXPECTED_COVERED
        && census.x_orbit_covered
        && census.total_points == SYLOW_DEGREE;
    r.line(format!(
        "{} non-trivial double cosets, {} covered",
        census.orbit_count,
        census.covered_orbits.len()
    ));
    r.line(format!("orbit sizes: {:?}", census.orbit_size_histogram));
    r.line(format!("seed^x lies in a covered orbit: {}", census.x_orbit_covered));
    r.detail("census", &census);
    Ok(r)
}

pub fn remark_b_report(s: &mut Session, word: Option<&str>) -> Result<Report> {
    let (x, _) = s.element(word)?;
    let fusion = Order13Fusion::from_h(&s.t.g.s, &s.t.h)?;
    let rep = remark_b_analysis(&s.t, &fusion, &x, s.cfg.seed, s.cfg.store_payloads)?;
    let mut r = Report::new("remark-b");
    r.survivors = Some(rep.survivors.iter().map(|z| z.matrix.clone()).collect());
    r.passed = rep.normalizer_order == EXPECTED_NORMALIZER
        && rep.survivors.len() == EXPECTED_SURVIVORS
        && rep.all_in_hxh;
    r.line(format!(
        "N order {}; {} survivors; {}",
        rep.normalizer_order,
        rep.survivors.len(),
        if rep.all_in_hxh { "all in HxH" } else { "not all in HxH" }
    ));
    r.line(format!(
        "order-4 elements of N: {}, inverting c: {}",
        rep.order4_elements, rep.inverting_c
    ));
    r.detail("fusion_exponents", &fusion.exponents);
    r.detail("remark_b", &rep);
    Ok(r)
}

pub fn remark_c_report(seed: u64, sweep: bool) -> Result<Report> {
    let setup = build_psl_coset_action(seed)?;
    let rep = counterexample_search(&setup.action, sweep, STABILIZER_CAP)?;
    let mut r = Report::new("remark-c");
    r.pair = rep.pair;
    r.fixed_point_histogram = rep.witness.as_ref().map(|w| w.fixed_point_histogram.clone());
    r.passed = rep.degree == COSET_DEGREE && rep.pair.is_some();
    r.line(format!("PSL(3,4) on {} cosets of a subgroup of order 5", rep.degree));
    match (&rep.pair, &rep.witness) {
        (Some((a, b)), Some(w)) => r.line(format!(
            "pair ({a}, {b}): orbital graph connected, no derangement among {} candidates, fixed points {:?}",
            w.candidates, w.fixed_point_histogram
        )),
        _ => r.line("no pair with a connected orbital graph lacks a derangement"),
    }
    r.detail("u", &setup.u.images());
    r.detail("search", &rep);
    Ok(r)
}

/// Sweeps the PSL(3,4) coset action and the bundled corpus.
pub fn remark_d_report(seed: u64) -> Result<Report> {
    let mut r = Report::new("remark-d");
    let mut all_ok = true;
    let mut total = BTreeMap::new();
    let setup = build_psl_coset_action(seed)?;
    let mut sweeps = Vec::new();
    let mut record = |name: &str, action: &PermAction, r: &mut Report| -> Result<()> {
        let sw = fixne1_sweep(action, STABILIZER_CAP)?;
        all_ok &= sw.violations.is_empty();
        for (k, v) in &sw.best_counts {
            *total.entry(*k).or_insert(0) += v;
        }
        r.line(format!("{name}: {} pairs, {} without an element of fixed-point count other than 1", sw.pairs_checked, sw.violations.len()));
        sweeps.push((name.to_string(), sw));
        Ok(())
    };
    record("psl3_4_cosets_4032", &setup.action, &mut r)?;
    for (name, text) in crate::data::CORPUS {
        let f = PermGroupFile::parse(text)?;
        let action = PermAction::new(f.generators, 0, None, phase_rng(seed, Phase::SmallGroups))?;
        record(name, &action, &mut r)?;
    }
    r.line("exploratory evidence only: finite sweeps do not prove the general statement");
    r.fixed_point_histogram = Some(total);
    r.passed = all_ok;
    r.detail("sweeps", &sweeps);
    Ok(r)
}

fn load_action(file: &Path, alpha: u32, seed: u64) -> Result<PermAction> {
    let f = PermGroupFile::parse(&std::fs::read_to_string(file)?)?;
    PermAction::new(f.generators, alpha, None, phase_rng(seed, Phase::SmallGroups))
}

pub fn orbital_report(file: &Path, alpha: u32, seed: u64) -> Result<Report> {
    let action = load_action(file, alpha, seed)?;
    let records = orbital_graphs(&action, true, STABILIZER_CAP)?;
    let mut r = Report::new("orbital");
    r.line(format!("degree {}, order {}, transitive {}", action.degree(), action.order(), action.is_transitive()));
    for rec in &records {
        r.line(format!(
            "beta {}: suborbit {}, connected {}, fewest fixed points {:?}",
            rec.beta,
            rec.suborbit_size,
            rec.connected,
            rec.min_fixed_points()
        ));
    }
    r.pair = records
        .iter()
        .find(|rec| rec.connected && rec.search.as_ref().is_some_and(|s| s.found.is_none()))
        .map(|rec| (alpha, rec.beta));
    r.passed = action.is_transitive();
    r.detail("primitive", &records.iter().all(|rec| rec.connected));
    r.detail("orbitals", &records);
    Ok(r)
}

pub fn derangement_report(file: &Path, alpha: u32, beta: u32, seed: u64) -> Result<Report> {
    let action = load_action(file, alpha, seed)?;
    let res = derangement_search(&action, beta, STABILIZER_CAP)?;
    let mut r = Report::new("derangement");
    r.pair = Some((alpha, beta));
    r.fixed_point_histogram = Some(res.fixed_point_histogram.clone());
    r.passed = res.found.is_some();
    match &res.found {
        Some(g) => r.line(format!("derangement mapping {alpha} to {beta}: {g:?}")),
        None => r.line(format!("no derangement maps {alpha} to {beta}; fixed points {:?}", res.fixed_point_histogram)),
    }
    r.detail("search", &res);
    Ok(r)
}

/// Fixed-point-count-not-one search for one pair, or a sweep over all `β`.
pub fn fixne1_report(file: &Path, alpha: u32, beta: Option<u32>, seed: u64) -> Result<Report> {
    let action = load_action(file, alpha, seed)?;
    let mut r = Report::new("fixne1");
    match beta {
        Some(beta) => {
            let res = fixne1_search(&action, beta, STABILIZER_CAP)?;
            r.pair = Some((alpha, beta));
            r.fixed_point_histogram = Some(res.fixed_point_histogram.clone());
            r.passed = res.found.is_some();
            r.line(match &res.found {
                Some(g) => format!("element mapping {alpha} to {beta} with {} fixed points: {g:?}", g.fixed_point_count()),
                None => format!("every element mapping {alpha} to {beta} fixes exactly one point"),
            });
            r.detail("search", &res);
        }
        None => {
            let sw = fixne1_sweep(&action, STABILIZER_CAP)?;
            r.fixed_point_histogram = Some(sw.best_counts.clone());
            r.passed = sw.violations.is_empty();
            r.line(format!("{} pairs checked, {} violations", sw.pairs_checked, sw.violations.len()));
            r.line("exploratory evidence only");
            r.detail("sweep", &sw);
        }
    }
    Ok(r)
}

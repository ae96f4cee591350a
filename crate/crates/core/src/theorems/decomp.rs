use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::action::{validate_action, ActionError, ActionSpec};
use crate::linalg::MatrixSpace;
use crate::quasidyn::{check_quasi, conv_mul, conv_star, induce_quasi_action, ConvElement, ConvError, QuasiError, QuasiSystem};
use crate::staralg::{left_regular, MatrixRep};

use super::TheoremReport;

#[derive(Debug, Clone, Error)]
pub enum DecompError {
    #[error("the representation mixes classes: {0}")]
    NotBlockRespecting(String),
    #[error(transparent)]
    Quasi(#[from] QuasiError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// The restriction of a regular action and its quasi system to one orbit class.
#[derive(Clone, Debug)]
pub struct Block {
    pub class: Vec<String>,
    pub spec: ActionSpec,
    pub system: QuasiSystem,
    /// Carrier coordinates of the class, ascending.
    pub indices: Vec<usize>,
}

/// The quasi system of a regular action together with its class-wise pieces.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub system: QuasiSystem,
    pub blocks: Vec<Block>,
    /// For each morphism of `G`: its block and its index in the block's groupoid.
    placement: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn block_of(&self, g: usize) -> usize {
        self.placement[g].0
    }

    /// The decomposition operator: `Σ a_t t` goes to its class-wise components, compressed to each class.
    pub fn split(&self, f: &ConvElement) -> Result<Vec<ConvElement>, ConvError> {
        let mut parts: Vec<Vec<(usize, _)>> = vec![Vec::new(); self.blocks.len()];
        for (&t, a) in f.terms() {
            let (b, tb) = self.placement[t];
            parts[b].push((tb, a.compress(&self.blocks[b].indices)));
        }
        parts.into_iter().zip(&self.blocks).map(|(p, b)| ConvElement::new(&b.system, p)).collect()
    }
}

/// Splits a regular action and a block-respecting representation of `H` along the orbit classes of `G`.
pub fn decompose(spec: &ActionSpec, rep: &MatrixRep) -> Result<BlockDecomposition, DecompError> {
    let system = induce_quasi_action(spec, rep)?;
    let orbits = spec.g.orbit_relation();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut blocks = Vec::new();
    let mut placement = vec![(usize::MAX, usize::MAX); spec.g.morphism_count()];
    for (b, class) in orbits.classes.iter().enumerate() {
        let sub = spec.restrict_to_class(class)?;
        let mut idx: BTreeSet<usize> = BTreeSet::new();
        for m in sub.h.morphisms() {
            idx.extend(rep.s(spec.h.mor(sub.hname(m)).expect("sub-category names")).support());
        }
        if let Some(&clash) = idx.intersection(&seen).next() {
            return Err(DecompError::NotBlockRespecting(format!("coordinate {clash} is used by two classes")));
        }
        seen.extend(&idx);
        let indices: Vec<usize> = idx.into_iter().collect();
        let sub_rep = rep.compress_to(sub.h.clone(), &indices);
        let sub_system = induce_quasi_action(&sub, &sub_rep)?;
        for t in sub.g.morphisms() {
            placement[spec.g.mor(sub.gname(t)).expect("sub-groupoid names")] = (b, t);
        }
        blocks.push(Block {
            class: class.iter().map(|&x| spec.g.object_name(x).to_string()).collect(),
            spec: sub,
            system: sub_system,
            indices,
        });
    }
    Ok(BlockDecomposition { system, blocks, placement })
}

/// Sampling budget for the pairwise product checks.
#[derive(Clone, Copy, Debug)]
pub struct DecompOptions {
    /// Basis pairs checked exhaustively up to this many; beyond it, a seeded sample of this size.
    pub max_pairs: usize,
    pub seed: u64,
}

impl Default for DecompOptions {
    fn default() -> Self {
        DecompOptions { max_pairs: 4096, seed: 0 }
    }
}

/// Checks that the decomposition operator is a *-isomorphism of `A[G]` onto the direct sum of
/// the class-wise convolution algebras. Non-regular actions are replaced by their regular part;
/// `rep` defaults to the left regular representation.
pub fn verify_decomposition(spec: &ActionSpec, rep: Option<&MatrixRep>, instance: &str, opts: DecompOptions) -> TheoremReport {
    let mut out = TheoremReport::new("decomposition", instance);
    if !out.absorb("action is valid", &validate_action(spec)) {
        return out;
    }
    let spec = if spec.is_regular() {
        spec.clone()
    } else {
        out.note("action is not regular; decomposing its regular part");
        spec.regular_spec()
    };
    let rep = match rep {
        Some(r) if r.cat.morphism_count() != spec.h.morphism_count() => r.restrict_to(spec.h.clone()),
        Some(r) => r.clone(),
        None => left_regular(&spec.h),
    };
    let dec = match decompose(&spec, &rep) {
        Ok(d) => d,
        Err(DecompError::Quasi(e @ QuasiError::WellDefinedness(..))) => {
            out.inapplicable(format!("the representation does not support the induced quasi action ({e})"));
            return out;
        }
        Err(e) => {
            out.assert("representation splits along the orbit classes", false, || e.to_string());
            return out;
        }
    };
    let sys = &dec.system;
    let classes = spec.g.orbit_relation().len();
    out.assert("one block per orbit class", dec.blocks.len() == classes, || format!("{} blocks, {classes} classes", dec.blocks.len()));
    let gen_total: usize = dec.blocks.iter().map(|b| b.spec.h.morphism_count()).sum();
    out.assert("block generators partition H_r", gen_total == spec.h.morphism_count(), || {
        format!("{gen_total} vs {}", spec.h.morphism_count())
    });
    out.observe("blocks", dec.blocks.len());
    out.tally(
        "each block is a quasi system",
        dec.blocks.iter().map(|b| if check_quasi(&b.system).is_valid() { Ok(()) } else { Err(b.class.clone()) }),
    );

    // basis bijection, one groupoid element at a time
    let mut bij = Vec::new();
    for t in spec.g.morphisms() {
        let (b, tb) = dec.placement[t];
        let block = &dec.blocks[b];
        let d = sys.domain(spec.g.inv(t));
        let images: Vec<_> = d.basis().iter().map(|a| a.compress(&block.indices)).collect();
        let faithful = d.basis().iter().zip(&images).all(|(a, c)| c.expand(sys.size(), &block.indices) == *a);
        let target = block.system.domain(block.system.g.inv(tb));
        let onto = MatrixSpace::spanned_by(block.system.size(), &images).same_space(target) && target.dim() == d.dim();
        bij.push(if faithful && onto { Ok(()) } else { Err(vec![spec.gname(t).to_string()]) });
    }
    out.tally("decomposition is a bijection on bases", bij);
    let basis = ConvElement::basis(sys);
    let block_dims: usize = dec.blocks.iter().map(|b| ConvElement::basis(&b.system).len()).sum();
    out.observe("convolution_algebra_dim", basis.len());
    out.assert("dimensions of A[G] and the direct sum agree", basis.len() == block_dims, || format!("{} vs {block_dims}", basis.len()));

    let split: Vec<_> = basis.iter().map(|f| dec.split(f)).collect();
    if let Some(i) = split.iter().position(Result::is_err) {
        out.assert("components lie in the block algebras", false, || format!("basis element {i}"));
        return out;
    }
    let split: Vec<Vec<ConvElement>> = split.into_iter().map(Result::unwrap).collect();

    let n = basis.len();
    let pairs: Vec<(usize, usize)> = if n * n <= opts.max_pairs {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    } else {
        out.note(format!("product checks sampled: {} of {} basis pairs", opts.max_pairs, n * n));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.max_pairs).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
    };
    let block_of = |f: &ConvElement| f.terms().keys().next().map(|&t| dec.block_of(t));
    let mut mul_ok = Vec::new();
    let mut cross = Vec::new();
    for &(i, j) in &pairs {
        let prod = conv_mul(sys, &basis[i], &basis[j]);
        let w = || vec![format!("basis {i}"), format!("basis {j}")];
        let Ok(prod) = prod else {
            mul_ok.push(Err(w()));
            continue;
        };
        if block_of(&basis[i]) != block_of(&basis[j]) {
            cross.push(if prod.is_zero() { Ok(()) } else { Err(w()) });
        }
        let lhs = dec.split(&prod);
        let rhs: Result<Vec<ConvElement>, _> =
            dec.blocks.iter().enumerate().map(|(b, blk)| conv_mul(&blk.system, &split[i][b], &split[j][b])).collect();
        mul_ok.push(match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => Ok(()),
            _ => Err(w()),
        });
    }
    out.tally("decomposition preserves convolution", mul_ok);
    out.tally("cross-block products vanish", cross);
    let star = (0..n).map(|i| {
        let lhs = conv_star(sys, &basis[i]).and_then(|s| dec.split(&s));
        let rhs: Result<Vec<_>, _> = dec.blocks.iter().enumerate().map(|(b, blk)| conv_star(&blk.system, &split[i][b])).collect();
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => Ok(()),
            _ => Err(vec![format!("basis {i}")]),
        }
    });
    out.tally("decomposition preserves the involution", star.collect::<Vec<_>>());
    out
}

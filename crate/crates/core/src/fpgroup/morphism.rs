//! Deciding whether generator assignments extend to homomorphisms.
//!
//! Two routes are offered. Against a presentation, an assignment extends iff
//! every relator evaluates to the identity. Against a concrete source group,
//! the assignment is pushed along the breadth-first spanning tree of the
//! source and then checked on every Cayley graph edge, which is equivalent
//! to checking a full set of defining relations.

use super::{todd_coxeter, GroupError, PermGroup, Permutation, Presentation, Word, DEFAULT_MAX_COSETS};

/// Largest order for which all ordered pairs of elements are enumerated.
pub const PAIR_ENUMERATION_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    NotHom,
    HomOntoSubgroup { order: usize },
    Epimorphism,
    Automorphism,
}

impl MorphismKind {
    pub fn is_surjective(self) -> bool {
        matches!(self, MorphismKind::Epimorphism | MorphismKind::Automorphism)
    }
}

/// The product of `gen_images` along the letters of `w`; the empty word gives
/// the identity. Degree is taken from the first image.
pub fn evaluate_word(w: &Word, gen_images: &[Permutation]) -> Permutation {
    let degree = gen_images.first().map_or(0, Permutation::degree);
    let inverses: Vec<Permutation> = gen_images.iter().map(Permutation::inverse).collect();
    let letters = w.letters();
    let images = (0..degree as u32)
        .map(|mut p| {
            for &l in letters {
                let g = l.unsigned_abs() as usize - 1;
                p = if l > 0 { gen_images[g].apply(p) } else { inverses[g].apply(p) };
            }
            p
        })
        .collect();
    Permutation::from_images(images).expect("products of permutations are permutations")
}

/// Whether every relator of `p` vanishes at `images`.
pub fn relators_hold(p: &Presentation, images: &[Permutation]) -> bool {
    p.relators().iter().all(|r| evaluate_word(r, images).is_identity())
}

/// Whether `images` generate all of `target`. Regular targets are decided by
/// an orbit computation: a subgroup of a regular group has orbits of its own
/// order.
pub fn generates(images: &[Permutation], target: &PermGroup) -> Result<bool, GroupError> {
    if target.is_regular() {
        let mut seen = vec![false; target.degree()];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(p) = stack.pop() {
            for g in images {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
        return Ok(count == target.degree());
    }
    Ok(PermGroup::generate(target.degree(), images)?.order() == target.order())
}

/// Classifies the assignment `gen_i -> images[i]` from the group presented by
/// `p` into `target`. Surjections are upgraded to automorphisms when the
/// presented group has the same order as `target`, which is found by coset
/// enumeration.
pub fn extends_to_morphism(p: &Presentation, images: &[Permutation], target: &PermGroup) -> MorphismKind {
    let source_order = || todd_coxeter(p, &[], DEFAULT_MAX_COSETS).ok().map(|t| t.num_cosets());
    classify(p, images, target, source_order)
}

/// As [`extends_to_morphism`] with the order of the presented group known.
pub fn extends_to_morphism_with_order(
    p: &Presentation,
    images: &[Permutation],
    target: &PermGroup,
    source_order: usize,
) -> MorphismKind {
    classify(p, images, target, || Some(source_order))
}

fn classify(
    p: &Presentation,
    images: &[Permutation],
    target: &PermGroup,
    source_order: impl FnOnce() -> Option<usize>,
) -> MorphismKind {
    if !relators_hold(p, images) {
        return MorphismKind::NotHom;
    }
    let order = match PermGroup::generate(target.degree(), images) {
        Ok(h) => h.order(),
        Err(_) => return MorphismKind::NotHom,
    };
    if order < target.order() {
        return MorphismKind::HomOntoSubgroup { order };
    }
    match source_order() {
        Some(n) if n == target.order() => MorphismKind::Automorphism,
        _ => MorphismKind::Epimorphism,
    }
}

/// Extends `source.generators()[i] -> images[i]` to every element of
/// `source`, returning the image of each element in listing order, or `None`
/// when the assignment is not a homomorphism.
pub fn extend_along_cayley_graph(source: &PermGroup, images: &[Permutation]) -> Option<Vec<Permutation>> {
    assert_eq!(images.len(), source.generators().len(), "one image per generator");
    let degree = images.first().map_or(0, Permutation::degree);
    let mut f: Vec<Permutation> = Vec::with_capacity(source.order());
    f.push(Permutation::identity(degree));
    for i in 1..source.order() {
        let (j, s) = source.parent(i);
        f.push(f[j].then(&images[s]));
    }
    for i in 0..source.order() {
        for (s, g) in source.generators().iter().enumerate() {
            let k = source
                .index_of(&source.element(i).then(g))
                .expect("group is closed");
            if f[k] != f[i].then(&images[s]) {
                return None;
            }
        }
    }
    Some(f)
}

/// Classifies `source.generators()[i] -> images[i]` as a map into `target`.
pub fn classify_extension(source: &PermGroup, images: &[Permutation], target: &PermGroup) -> MorphismKind {
    let Some(f) = extend_along_cayley_graph(source, images) else {
        return MorphismKind::NotHom;
    };
    let distinct: std::collections::HashSet<&Permutation> = f.iter().collect();
    if distinct.len() < target.order() {
        MorphismKind::HomOntoSubgroup { order: distinct.len() }
    } else if distinct.len() == source.order() {
        MorphismKind::Automorphism
    } else {
        MorphismKind::Epimorphism
    }
}

/// Whether `source.generators()[i] -> images[i]` is an isomorphism onto the
/// group the images generate, and that group has the order of `target`.
pub fn is_isomorphism(source: &PermGroup, images: &[Permutation], target: &PermGroup) -> bool {
    source.order() == target.order()
        && classify_extension(source, images, target) == MorphismKind::Automorphism
}

/// Searches for images of `source`'s generators in `target` defining an
/// isomorphism, trying only candidates of matching element order.
pub fn find_isomorphism(source: &PermGroup, target: &PermGroup) -> Option<Vec<Permutation>> {
    if source.order() != target.order()
        || source.element_order_profile() != target.element_order_profile()
    {
        return None;
    }
    let by_order: Vec<Vec<&Permutation>> = source
        .generators()
        .iter()
        .map(|g| {
            let o = g.order();
            target.elements().filter(|t| t.order() == o).collect()
        })
        .collect();
    let mut chosen: Vec<Permutation> = Vec::with_capacity(by_order.len());
    search(source, target, &by_order, &mut chosen)
}

fn search(
    source: &PermGroup,
    target: &PermGroup,
    candidates: &[Vec<&Permutation>],
    chosen: &mut Vec<Permutation>,
) -> Option<Vec<Permutation>> {
    let k = chosen.len();
    if k == candidates.len() {
        return is_isomorphism(source, chosen, target).then(|| chosen.clone());
    }
    for &c in &candidates[k] {
        chosen.push(c.clone());
        if let Some(found) = search(source, target, candidates, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Ordered pairs `(i, j)` of element positions with `<g_i, g_j> = G`.
pub fn generating_pairs(g: &PermGroup) -> Result<Vec<(usize, usize)>, GroupError> {
    if g.order() > PAIR_ENUMERATION_CAP {
        return Err(GroupError::SizeCap {
            order: g.order(),
            limit: PAIR_ENUMERATION_CAP,
        });
    }
    let elems: Vec<&Permutation> = g.elements().collect();
    let mut out = Vec::new();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            if generates(&[(*a).clone(), (*b).clone()], g)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// `|Aut(G)|` for `G` presented by `p` on two generators, counted as the
/// generating pairs at which `p`'s relators vanish. Each such pair is the
/// image of the defining pair under exactly one automorphism.
pub fn automorphism_count(g: &PermGroup, p: &Presentation) -> Result<usize, GroupError> {
    let pairs = generating_pairs(g)?;
    Ok(pairs
        .iter()
        .filter(|&&(i, j)| relators_hold(p, &[g.element(i).clone(), g.element(j).clone()]))
        .count())
}

/// Whether `G / K` is presented by `p` through `images`: every relator lands
/// in `k` and the index of `k` equals the order of the presented group.
pub fn quotient_is_presented_by(
    p: &Presentation,
    images: &[Permutation],
    group_order: usize,
    k: &PermGroup,
    presented_order: usize,
) -> bool {
    p.relators().iter().all(|r| k.contains(&evaluate_word(r, images)))
        && k.order() * presented_order == group_order
}

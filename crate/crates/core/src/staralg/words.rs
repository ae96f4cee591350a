use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{linear_combination, MatrixSpace};
use crate::matrix::ExactMatrix;
use crate::scalar::Gq;

/// How a basis element of a [`WordAlgebra`] was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Word {
    Letter(usize),
    /// `basis[parent] · letter`
    Times(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("letter substitution is not well defined: {0}")]
pub struct WellDefinednessFailure(pub String);

/// The *-algebra generated by a finite set of square matrices, with a basis of words.
///
/// Letters are the generators and their adjoints (`2i` is `gens[i]`, `2i+1` its adjoint).
/// Every basis element is a word, and the coordinates of `basis[b]·letter[l]`
/// are recorded, which is exactly the data needed to decide whether a
/// substitution of the letters extends to an algebra homomorphism.
#[derive(Clone, Debug)]
pub struct WordAlgebra {
    letters: Vec<ExactMatrix>,
    space: MatrixSpace,
    words: Vec<Word>,
    letter_coords: Vec<Vec<Gq>>,
    products: Vec<Vec<Vec<Gq>>>,
}

fn pad(mut v: Vec<Gq>, n: usize) -> Vec<Gq> {
    v.resize(n, Gq::zero());
    v
}

impl WordAlgebra {
    pub fn new(size: usize, gens: &[ExactMatrix]) -> Self {
        let letters: Vec<ExactMatrix> = gens.iter().flat_map(|g| [g.clone(), g.adjoint()]).collect();
        let mut space = MatrixSpace::new(size);
        let mut words = Vec::new();
        for (l, m) in letters.iter().enumerate() {
            if space.try_push(m.clone()) {
                words.push(Word::Letter(l));
            }
        }
        let mut products: Vec<Vec<Vec<Gq>>> = Vec::new();
        let mut b = 0;
        while b < space.dim() {
            let mut row = Vec::with_capacity(letters.len());
            for (l, x) in letters.iter().enumerate() {
                let m = space.basis()[b].mul(x);
                match space.coords(&m) {
                    Some(c) => row.push(c),
                    None => {
                        space.try_push(m);
                        words.push(Word::Times(b, l));
                        let mut c = vec![Gq::zero(); space.dim()];
                        c[space.dim() - 1] = Gq::from(1);
                        row.push(c);
                    }
                }
            }
            products.push(row);
            b += 1;
        }
        let dim = space.dim();
        let products = products.into_iter().map(|row| row.into_iter().map(|c| pad(c, dim)).collect()).collect();
        let letter_coords = letters.iter().map(|x| space.coords(x).expect("letters are in the algebra")).collect();
        WordAlgebra {
            letters,
            space,
            words,
            letter_coords,
            products,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        self.space.basis()
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.space
    }

    /// Generators and their adjoints, interleaved.
    pub fn letters(&self) -> &[ExactMatrix] {
        &self.letters
    }

    pub fn generator_count(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Extends `gen_i ↦ images[i]` (and `gen_i* ↦ images[i]*`) to the algebra, returning
    /// the images of the basis, or a witness that no *-homomorphism does this.
    pub fn extend_letter_map(&self, images: &[ExactMatrix]) -> Result<Vec<ExactMatrix>, WellDefinednessFailure> {
        assert_eq!(images.len(), self.generator_count(), "one image per generator");
        let limg: Vec<ExactMatrix> = images.iter().flat_map(|m| [m.clone(), m.adjoint()]).collect();
        let mut img: Vec<ExactMatrix> = Vec::with_capacity(self.dim());
        for w in &self.words {
            img.push(match *w {
                Word::Letter(l) => limg[l].clone(),
                Word::Times(p, l) => img[p].mul(&limg[l]),
            });
        }
        let size = limg.first().map_or(0, |m| m.rows());
        let eval = |c: &[Gq]| linear_combination(size, img.iter().zip(c.iter().copied()));
        for (l, c) in self.letter_coords.iter().enumerate() {
            if eval(c) != limg[l] {
                return Err(WellDefinednessFailure(format!("letter {l} is a combination of basis words whose images disagree")));
            }
        }
        for (b, row) in self.products.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                if img[b].mul(&limg[l]) != eval(c) {
                    return Err(WellDefinednessFailure(format!("a relation satisfied by basis word {b} times letter {l} is not preserved")));
                }
            }
        }
        Ok(img)
    }
}

/// A linear basis of the *-algebra generated by `gens` (no unit is adjoined).
pub fn algebra_span(size: usize, gens: &[ExactMatrix]) -> Vec<ExactMatrix> {
    WordAlgebra::new(size, gens).basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!(algebra_span(2, &[ExactMatrix::identity(2)]).len(), 1);
        assert_eq!(algebra_span(2, &[ExactMatrix::unit(2, 0, 1)]).len(), 4);
        assert_eq!(algebra_span(2, &[]).len(), 0);
        assert_eq!(algebra_span(3, &[ExactMatrix::unit(3, 0, 0), ExactMatrix::unit(3, 1, 1)]).len(), 2);
    }

    #[test]
    fn swap_of_matrix_units_extends() {
        let a = WordAlgebra::new(2, &[ExactMatrix::unit(2, 0, 0), ExactMatrix::unit(2, 1, 1)]);
        let img = a.extend_letter_map(&[ExactMatrix::unit(2, 1, 1), ExactMatrix::unit(2, 0, 0)]).unwrap();
        assert_eq!(img.len(), 2);
    }

    #[test]
    fn collapsing_relation_detected() {
        // e11 e22 = 0 but the images are the same nonzero projection
        let a = WordAlgebra::new(2, &[ExactMatrix::unit(2, 0, 0), ExactMatrix::unit(2, 1, 1)]);
        let p = ExactMatrix::unit(2, 0, 0);
        assert!(a.extend_letter_map(&[p.clone(), p]).is_err());
    }

    #[test]
    fn linear_relation_detected() {
        // third generator is the sum of the first two; images must respect that
        let (x, y) = (ExactMatrix::unit(2, 0, 0), ExactMatrix::unit(2, 1, 1));
        let a = WordAlgebra::new(2, &[x.clone(), y.clone(), ExactMatrix::identity(2)]);
        assert!(a.extend_letter_map(&[y.clone(), x.clone(), ExactMatrix::identity(2)]).is_ok());
        assert!(a.extend_letter_map(&[y, x.clone(), x]).is_err());
    }
}

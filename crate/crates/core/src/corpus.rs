//! Small named actions and modules used by the tests, the acceptance suite and
//! the CLI self-test.

use std::sync::Arc;

use crate::algebra::{
    field_extension_algebra, frobenius_aut, group_algebra, matrix_algebra, path_algebra, path_algebra_aut, Algebra,
    Quiver,
};
use crate::error::Result;
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::mat::Mat;
use crate::orbit::GroupAction;
use crate::rep::Module;

/// `C_2` acting on `Mat_2(F_p)` by conjugation with the swap matrix.
pub fn mat2_swap(p: u64) -> Result<Arc<GroupAction>> {
    let f = Field::prime(p)?;
    let m2 = Arc::new(matrix_algebra(&f, 2)?);
    let swap = Mat::from_ints(&f, 2, 2, &[0, 1, 1, 0]);
    Ok(Arc::new(GroupAction::conjugation(
        m2,
        FiniteGroup::cyclic(2),
        &[Mat::identity(&f, 2), swap],
    )?))
}

/// `C_2 x C_2` acting on `Mat_2(F_p)` (p odd) through `diag(1, -1)` and the swap.
pub fn mat2_klein(p: u64) -> Result<Arc<GroupAction>> {
    let f = Field::prime(p)?;
    let m2 = Arc::new(matrix_algebra(&f, 2)?);
    let d = Mat::from_ints(&f, 2, 2, &[1, 0, 0, -1]);
    let w = Mat::from_ints(&f, 2, 2, &[0, 1, 1, 0]);
    let id = Mat::identity(&f, 2);
    let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    // (a, b) at index 2a + b acts through d^a w^b
    let mats = [id.clone(), w.clone(), d.clone(), &d * &w];
    Ok(Arc::new(GroupAction::conjugation(m2, klein, &mats)?))
}

/// The column module of `Mat_n`.
pub fn column_module(a: &Arc<Algebra>) -> Module {
    let f = a.field();
    let n = (a.dim() as f64).sqrt().round() as usize;
    let action = (0..n * n)
        .map(|k| {
            let mut m = Mat::zeros(f, n, n);
            m.set(k / n, k % n, f.one());
            m
        })
        .collect();
    Module::from_parts(a.clone(), n, action)
}

/// The Kronecker algebra over `F_p` with `C_2` swapping the two arrows.
pub fn kronecker_swap(p: u64) -> Result<Arc<GroupAction>> {
    let f = Field::prime(p)?;
    let q = Quiver::kronecker();
    let a = path_algebra(&f, &q, &[])?;
    let sigma = path_algebra_aut(&a, &q, &[], &[0, 1], &[(1, f.one()), (0, f.one())])?;
    Ok(Arc::new(GroupAction::cyclic(Arc::new(a), 2, sigma)?))
}

/// Left module of the Kronecker algebra on `V_0 ⊕ V_1`. Paths compose left to
/// right, so the arrows act `V_1 -> V_0`, given by two `d0 x d1` matrices.
pub fn kronecker_rep(a: &Arc<Algebra>, d0: usize, d1: usize, ma: &Mat, mb: &Mat) -> Result<Module> {
    let f = a.field();
    let n = d0 + d1;
    let mut e0 = Mat::zeros(f, n, n);
    let mut e1 = Mat::zeros(f, n, n);
    for i in 0..d0 {
        e0.set(i, i, f.one());
    }
    for i in 0..d1 {
        e1.set(d0 + i, d0 + i, f.one());
    }
    let arrow = |m: &Mat| {
        let mut x = Mat::zeros(f, n, n);
        x.set_block(0, d0, m);
        x
    };
    Module::new(a.clone(), vec![e0, e1, arrow(ma), arrow(mb)])
}

/// The simple module at vertex `v` of the Kronecker algebra.
pub fn kronecker_simple(a: &Arc<Algebra>, v: usize) -> Result<Module> {
    let f = a.field();
    let (d0, d1) = if v == 0 { (1, 0) } else { (0, 1) };
    kronecker_rep(a, d0, d1, &Mat::zeros(f, d0, d1), &Mat::zeros(f, d0, d1))
}

/// `C_2` acting on `F_p C_n` by inversion.
pub fn cyclic_inversion(p: u64, n: usize) -> Result<Arc<GroupAction>> {
    let f = Field::prime(p)?;
    let c = FiniteGroup::cyclic(n);
    Ok(Arc::new(GroupAction::inversion(Arc::new(group_algebra(&f, &c)), &c)?))
}

/// `C_m` acting on `F_p C_n` through the power map `x -> x^k` (`k^m = 1 mod n`).
pub fn cyclic_power_action(p: u64, n: usize, k: usize, m: usize) -> Result<Arc<GroupAction>> {
    let f = Field::prime(p)?;
    let c = FiniteGroup::cyclic(n);
    let a = Arc::new(group_algebra(&f, &c));
    let mut perms = Vec::with_capacity(m);
    let mut e = 1usize;
    for _ in 0..m {
        perms.push((0..n).map(|x| (x * e) % n).collect());
        e = (e * k) % n;
    }
    Ok(Arc::new(GroupAction::from_group_automorphisms(
        a,
        &c,
        FiniteGroup::cyclic(m),
        &perms,
    )?))
}

/// `C_n` acting on `F_{p^deg}` (as an `F_p`-algebra) through Frobenius; `deg` divides `n`.
pub fn frobenius_action(p: u64, deg: usize, n: usize) -> Result<Arc<GroupAction>> {
    let f = Field::prime(p)?;
    let a = field_extension_algebra(&f, deg)?;
    let s = frobenius_aut(&a, &f, deg, 1)?;
    Ok(Arc::new(GroupAction::cyclic(Arc::new(a), n, s)?))
}

/// One-dimensional module of `kC_n` (basis `g^k` at index `k`) with `g -> w`.
pub fn character(a: &Arc<Algebra>, w: i64) -> Result<Module> {
    let f = a.field();
    let w = f.from_int(w);
    let action = (0..a.dim())
        .map(|k| Mat::from_fn(f, 1, 1, |_, _| f.pow(w, k as u64)))
        .collect();
    Module::new(a.clone(), action)
}

/// The uniserial module `kC_p / (g - 1)^k` of `F_p C_p`, `1 <= k <= p`.
pub fn uniserial(a: &Arc<Algebra>, k: usize) -> Result<Module> {
    let f = a.field();
    let n = a.dim();
    // g acts on the basis 1, (g-1), ..., (g-1)^{k-1} as 1 + shift
    let mut g = Mat::identity(f, k);
    for i in 0..k.saturating_sub(1) {
        g.set(i + 1, i, f.one());
    }
    let action = (0..n).map(|e| g.pow(e)).collect();
    Module::new(a.clone(), action)
}

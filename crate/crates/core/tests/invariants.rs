use std::sync::OnceLock;

use gsp4_core::bessel::lemmas::{brute_force_sum, orbit_sums};
use gsp4_core::bessel::BesselContext;
use gsp4_core::chartab::cyclotomic::CyclotomicRing;
use gsp4_core::chartab::CharacterTable;
use gsp4_core::conj::{act, canonical_form_2x2, ClassData, Orbit2x2};
use gsp4_core::ffield::{ComplexRoot, Elem, Field};
use gsp4_core::gsp4::{classify_datum, Gsp4, DEFAULT_ELEMENT_BUDGET};
use proptest::prelude::*;

const FIELDS: [(u32, u32); 8] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1)];

fn field(i: usize) -> &'static Field {
    static CELLS: OnceLock<Vec<Field>> = OnceLock::new();
    &CELLS.get_or_init(|| FIELDS.iter().map(|&(p, n)| Field::new(p, n).unwrap()).collect())[i]
}

fn elem(f: &Field, k: u32) -> Elem {
    Elem((k % f.order()) as u16)
}

struct Q3 {
    cd: ClassData,
    ct: CharacterTable,
}

fn q3() -> &'static Q3 {
    static CELL: OnceLock<Q3> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = Gsp4::new(Field::new(3, 1).unwrap());
        let cd = ClassData::compute(&g, DEFAULT_ELEMENT_BUDGET).unwrap();
        let ct = CharacterTable::compute(&cd).unwrap();
        Q3 { cd, ct }
    })
}

proptest! {
    #[test]
    fn field_axioms(i in 0..FIELDS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let f = field(i);
        let (x, y, z) = (elem(f, x), elem(f, y), elem(f, z));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x)), Elem::ONE);
            prop_assert_eq!(f.pow(x, (f.order() - 1) as i64), Elem::ONE);
        }
    }

    #[test]
    fn psi_is_a_homomorphism(i in 0..FIELDS.len(), x in any::<u32>(), y in any::<u32>()) {
        let f = field(i);
        let (x, y) = (elem(f, x), elem(f, y));
        prop_assert_eq!(f.psi(f.add(x, y)), f.psi(x).mul(f.psi(y)));
        prop_assert_eq!(f.psi(f.neg(x)), f.psi(x).inverse());
    }

    #[test]
    fn epsilon_is_a_homomorphism(i in prop::sample::select(vec![0usize, 2, 5]), x in any::<u32>(), y in any::<u32>()) {
        let f = field(i);
        let (x, y) = (elem(f, x), elem(f, y));
        prop_assert_eq!(f.epsilon(f.add(x, y)).unwrap(), f.epsilon(x).unwrap() * f.epsilon(y).unwrap());
        prop_assert_eq!(f.epsilon(f.add(f.mul(x, x), x)).unwrap(), 1);
    }

    #[test]
    fn roots_compare_by_value(m in 1u32..50, e in 0i64..200, k in 1u32..8) {
        prop_assert_eq!(ComplexRoot::new(m * k, e * k as i64), ComplexRoot::new(m, e));
        prop_assert!(ComplexRoot::new(m, e).mul(ComplexRoot::new(m, e).inverse()).is_one());
    }

    #[test]
    fn cyclotomic_ring_laws(n in prop::sample::select(vec![12u32, 15, 24, 60, 360]), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let r = CyclotomicRing::new(n);
        let x = &r.root(a % n as i64).scale(2) + &r.root(b % n as i64);
        let y = &r.root(c % n as i64) - &r.integer(3);
        prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
        // zeta^k zeta^(n-k) = 1
        prop_assert_eq!(r.mul(&r.root(a % n as i64), &r.root(n as i64 - a % n as i64)), r.integer(1));
        // |zeta^k|^2 = 1
        let z = r.root(b % n as i64);
        prop_assert_eq!(r.mul(&z, &r.conj(&z)), r.integer(1));
    }

    #[test]
    fn lemma_sums_on_random_triples(i in 0..7usize, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        let closed = orbit_sums(f, a, b, c);
        for (k, locus) in Orbit2x2::all(f.is_even()).into_iter().enumerate().skip(1) {
            prop_assert_eq!(brute_force_sum(f, a, b, c, locus).unwrap(), closed[k]);
        }
    }

    #[test]
    fn orbit_label_is_invariant(
        i in 0..FIELDS.len(),
        m in any::<[u32; 4]>(),
        u in any::<u32>(),
        t in any::<[u32; 3]>(),
    ) {
        let f = field(i);
        let a = [[elem(f, m[0]), elem(f, m[1])], [elem(f, m[2]), elem(f, m[3])]];
        let u = elem(f, u);
        prop_assume!(!u.is_zero());
        let xyz = (elem(f, t[0]), elem(f, t[1]), elem(f, t[2]));
        if let Some(img) = act(f, &a, u, xyz) {
            prop_assert_eq!(canonical_form_2x2(f, img.0, img.1, img.2), canonical_form_2x2(f, xyz.0, xyz.1, xyz.2));
        }
    }

    #[test]
    fn datum_class_is_invariant_under_scaling(i in 0..FIELDS.len(), t in any::<[u32; 3]>(), l in any::<u32>()) {
        let f = field(i);
        let l = elem(f, l);
        prop_assume!(!l.is_zero());
        let (a, b, c) = (elem(f, t[0]), elem(f, t[1]), elem(f, t[2]));
        let d = classify_datum(f, a, b, c).rank_class;
        prop_assert_eq!(classify_datum(f, f.mul(l, a), f.mul(l, b), f.mul(l, c)).rank_class, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_n_depends_only_on_the_class(t in any::<[u32; 3]>(), row in 0usize..38) {
        let p = q3();
        let ctx = BesselContext::new(&p.cd, &p.ct).unwrap();
        let f = ctx.field();
        let (a, b, c) = (elem(f, t[0]), elem(f, t[1]), elem(f, t[2]));
        let rc = classify_datum(f, a, b, c).rank_class;
        let rep = ctx.group().all_data().into_iter().find(|d| d.rank_class == rc).unwrap();
        prop_assert_eq!(ctx.hom_dim_n(row, a, b, c).unwrap(), ctx.hom_dim_n(row, rep.a, rep.b, rep.c).unwrap());
        prop_assert_eq!(
            ctx.hom_dim_n(row, a, b, c).unwrap(),
            ctx.hom_dim_n_by_orbits(row, f, a, b, c).unwrap()
        );
    }
}

//! Character-level invariants behind the spectrum formulas: the pairing is
//! perfect on the full ring and on every divisor quotient, the Ramanujan sum
//! does not depend on which primitive character anchors it, scalar-closed
//! symmetric connection sets always produce rational spectra, and complement
//! graphs pair eigenvalues character by character.

use gcdgraph::cyclo::CycloInt;
use gcdgraph::gcdgraph::RingEnumeration;
use gcdgraph::gf::Field;
use gcdgraph::polyring::{divisors, gcd_monic, monic_of_degree, Poly};
use gcdgraph::spectrum::{
    cayley_spectrum_bruteforce, ramanujan_bruteforce, spectrum, CharacterSystem,
};
use gcdgraph::sweep::ModulusFamily;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u64) -> Field {
    let (p, m) = match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        _ => (q, 1),
    };
    Field::new(p, m, None).unwrap()
}

#[test]
fn pairings_are_perfect_on_the_ring_and_every_quotient() {
    let families: &[(u64, usize)] = &[(2, 5), (3, 3), (4, 2), (5, 2)];
    for &(q, max_deg) in families {
        let fld = field(q);
        for deg in 1..=max_deg {
            for f in monic_of_degree(&fld, deg).unwrap() {
                let en = RingEnumeration::new(&fld, &f).unwrap();
                let chars = CharacterSystem::new(en.clone());

                // No nonzero residue pairs trivially with the whole ring.
                for g in 1..en.size() {
                    let hit = (0..en.size()).any(|h| chars.exponent(g, h).unwrap() != 0);
                    assert!(hit, "degenerate pairing at residue {g} for f = {f}");
                }

                // The induced character on F_q[x]/g, a -> psi((f/g) a), stays
                // perfect for every proper divisor g.
                for g in divisors(&f).unwrap() {
                    if g.is_one() || g == f {
                        continue;
                    }
                    let cofactor = f.divexact(&g).unwrap();
                    let gen = RingEnumeration::new(&fld, &g).unwrap();
                    for a in 1..gen.size() {
                        let lifted = &cofactor * &gen.residue(a);
                        let hit = (0..gen.size()).any(|b| {
                            let prod = &lifted * &gen.residue(b);
                            chars.exponent_at(en.index_of(&prod).unwrap()) != 0
                        });
                        assert!(hit, "degenerate quotient pairing: f = {f}, g = {g}, a = {a}");
                    }
                }
            }
        }
    }
}

#[test]
fn unit_twisted_characters_give_identical_ramanujan_sums() {
    let cases: &[(u64, &[u64])] = &[
        (2, &[0, 0, 1, 1]), // x^2(x+1)
        (3, &[0, 1, 1]),    // x(x+1)
        (4, &[0, 1, 1]),
        (5, &[0, 0, 1]), // x^2
    ];
    for &(q, coeffs) in cases {
        let fld = field(q);
        let f = Poly::from_indices(&fld, coeffs).unwrap();
        let en = RingEnumeration::new(&fld, &f).unwrap();
        let chars = CharacterSystem::new(en.clone());
        let units: Vec<u64> = (1..en.size())
            .filter(|&h| gcd_monic(&en.residue(h), &f).unwrap().is_one())
            .collect();
        for &u in &units {
            for g in 0..en.size() {
                // Ramanujan sum built from the twisted character r -> psi(u r).
                let mut twisted = CycloInt::zero(fld.p());
                for &h in &units {
                    let prod = &(&en.residue(u) * &en.residue(h)) * &en.residue(g);
                    twisted.add_zeta(chars.exponent_at(en.index_of(&prod).unwrap()));
                }
                let reference = ramanujan_bruteforce(&en.residue(g), &f).unwrap();
                assert_eq!(twisted, reference, "twist by unit {u} changed c(g, f) at g = {g}");
            }
        }
    }
}

#[test]
fn scalar_closed_symmetric_sets_have_integer_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: &[(u64, &[u64])] = &[
        (3, &[0, 1, 1]),    // ring 9
        (3, &[0, 2, 0, 1]), // x^3 + 2x, ring 27
        (5, &[0, 1, 1]),    // ring 25
        (7, &[0, 0, 1]),    // ring 49
        (4, &[0, 1, 1]),    // ring 16, characteristic 2
    ];
    let mut total = 0;
    for &(q, coeffs) in cases {
        let fld = field(q);
        let f = Poly::from_indices(&fld, coeffs).unwrap();
        let en = RingEnumeration::new(&fld, &f).unwrap();
        let chars = CharacterSystem::new(en.clone());
        let n = en.size();
        let scalars: Vec<_> = (2..fld.p()).map(|c| fld.from_prime(c)).collect();
        for _ in 0..40 {
            let mut inset = vec![false; n as usize];
            for idx in 1..n {
                if rng.gen_bool(0.4) {
                    inset[idx as usize] = true;
                }
            }
            // Close under negation and multiplication by prime-field scalars.
            loop {
                let mut changed = false;
                for idx in 1..n {
                    if !inset[idx as usize] {
                        continue;
                    }
                    let mut orbit = vec![en.sub_idx(0, idx)];
                    orbit.extend(scalars.iter().map(|&c| en.scalar_mul_idx(c, idx)));
                    for s in orbit {
                        if !inset[s as usize] {
                            inset[s as usize] = true;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            let connection: Vec<u64> = (1..n).filter(|&i| inset[i as usize]).collect();
            let values = cayley_spectrum_bruteforce(&chars, &connection).unwrap();
            let ints: Vec<i64> = values
                .iter()
                .map(|v| {
                    v.as_i64()
                        .expect("scalar-closed symmetric sets must have rational spectra")
                })
                .collect();
            assert_eq!(ints[0], connection.len() as i64);
            assert_eq!(ints.iter().map(|&x| x as i128).sum::<i128>(), 0);
            total += 1;
        }
    }
    assert_eq!(total, 200);
}

#[test]
fn complement_spectra_pair_eigenvalues_character_by_character() {
    for (q, max_deg) in [(2u64, 4usize), (3, 2)] {
        let fld = field(q);
        for deg in 1..=max_deg {
            for f in monic_of_degree(&fld, deg).unwrap() {
                let fam = ModulusFamily::new(&fld, &f).unwrap();
                let n = fam.enumeration().size() as i64;
                for mask in 0..fam.subset_count() {
                    let spec = fam.spec_for(mask).unwrap();
                    let complement = spec.complement().unwrap();
                    let s = spectrum(&spec).unwrap();
                    let t = spectrum(&complement).unwrap();
                    assert_eq!(t.eigenvalues[0], n - 1 - s.eigenvalues[0]);
                    for i in 1..s.eigenvalues.len() {
                        assert_eq!(
                            t.eigenvalues[i],
                            -1 - s.eigenvalues[i],
                            "complement pairing broke at f = {f}, mask = {mask}, index {i}"
                        );
                    }
                }
            }
        }
    }
}

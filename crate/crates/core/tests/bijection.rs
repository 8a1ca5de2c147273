use std::collections::BTreeSet;

use qpart::bijection::{
    in_a_double_prime, marks_a, marks_f, rotate_simple, simple_bijection, t_inv, t_inv_traced, t_map,
    t_map_traced, Direction, ForwardBranch, InverseBranch,
};
use qpart::classes::member;
use qpart::{partitions, ClassId, ClassKind, Partition};

fn id(kind: ClassKind, r: u32, i: u32) -> ClassId {
    ClassId::new(kind, r, i).unwrap()
}

#[test]
fn t_and_t_inverse_are_mutually_inverse() {
    for r in 2..=5 {
        for n in 0..=20 {
            let domain: Vec<Partition> = partitions(n).filter(|l| in_a_double_prime(l, r).unwrap()).collect();
            let target: Vec<Partition> =
                partitions(n).filter(|l| member(id(ClassKind::A, r, r - 1), l)).collect();
            let mut image = BTreeSet::new();
            for lam in &domain {
                let mu = t_map(lam, r).unwrap();
                assert_eq!(mu.weight(), n as u64);
                assert!(member(id(ClassKind::A, r, r - 1), &mu), "T({lam}) = {mu} r={r}");
                assert_eq!(&t_inv(&mu, r).unwrap(), lam, "r={r}");
                image.insert(mu.to_string());
            }
            assert_eq!(image.len(), target.len(), "r={r} n={n}");
            for mu in &target {
                assert_eq!(t_map(&t_inv(mu, r).unwrap(), r).unwrap(), *mu, "r={r}");
            }
        }
    }
}

#[test]
fn double_prime_class_is_the_durfee_class() {
    for r in 2..=5 {
        for n in 0..=20 {
            for lam in partitions(n) {
                assert_eq!(
                    in_a_double_prime(&lam, r).unwrap(),
                    member(id(ClassKind::D, r, r - 1), &lam),
                    "{lam} r={r}"
                );
            }
        }
    }
}

#[test]
fn complement_in_top_class_matches_transition_set() {
    for r in 2..=5 {
        for n in 0..=20 {
            for lam in partitions(n) {
                let left = member(id(ClassKind::A, r, r), &lam) && !in_a_double_prime(&lam, r).unwrap();
                let right = member(id(ClassKind::D, r, r), &lam) && !member(id(ClassKind::D, r, r - 1), &lam);
                assert_eq!(left, right, "{lam} r={r}");
            }
        }
    }
}

#[test]
fn branches_follow_the_marker_correspondence() {
    for r in 2..=5 {
        for n in 0..=20 {
            for lam in partitions(n).filter(|l| in_a_double_prime(l, r).unwrap()) {
                let (mu, fwd) = t_map_traced(&lam, r).unwrap();
                let (_, back) = t_inv_traced(&mu, r).unwrap();
                match fwd {
                    ForwardBranch::Identity => assert_eq!(back, InverseBranch::Identity),
                    ForwardBranch::Rotate { m } => {
                        assert_eq!(marks_a(&lam).max(), Some(m));
                        let f = marks_f(&mu, r).unwrap();
                        if m == 1 {
                            assert_eq!(back, InverseBranch::NoMarks, "{lam} r={r}");
                            assert!(f.set.is_empty());
                        } else {
                            assert_eq!(f.max(), Some(m - 1), "{lam} r={r}");
                            let expected = if m - 1 == (r - 2) as usize {
                                InverseBranch::LastSquare
                            } else {
                                InverseBranch::Inner { m_prime: m - 1 }
                            };
                            assert_eq!(back, expected, "{lam} r={r}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn rotation_is_a_bijection_for_i_one() {
    for r in 2..=4 {
        for n in 0..=18 {
            let a: Vec<Partition> = partitions(n).filter(|l| member(id(ClassKind::A, r, 1), l)).collect();
            let d: BTreeSet<String> =
                partitions(n).filter(|l| member(id(ClassKind::D, r, 1), l)).map(|l| l.to_string()).collect();
            let mut image = BTreeSet::new();
            for lam in &a {
                let mu = rotate_simple(lam, r, Direction::AToD).unwrap();
                assert_eq!(mu.weight(), n as u64);
                assert_eq!(&rotate_simple(&mu, r, Direction::DToA).unwrap(), lam);
                image.insert(mu.to_string());
            }
            assert_eq!(image, d, "r={r} n={n}");
        }
    }
}

#[test]
fn top_class_bijection_is_the_identity() {
    for r in 2..=4 {
        for n in 0..=16 {
            for lam in partitions(n) {
                let a = member(id(ClassKind::A, r, r), &lam);
                assert_eq!(a, member(id(ClassKind::D, r, r), &lam), "{lam} r={r}");
                if a {
                    assert_eq!(simple_bijection(&lam, r, r, Direction::AToD).unwrap(), lam);
                }
            }
        }
    }
}

#[test]
fn middle_indices_have_no_simple_bijection() {
    assert!(simple_bijection(&Partition::empty(), 4, 2, Direction::AToD).is_err());
}

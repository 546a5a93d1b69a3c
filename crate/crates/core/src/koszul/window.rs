use std::collections::HashMap;

/// Monomials `z^α` with every exponent at most `cap`, in graded-lexicographic
/// order (total degree first, then lexicographic).
#[derive(Debug, Clone)]
pub struct MonomialWindow {
    nvars: usize,
    cap: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialWindow {
    pub fn new(nvars: usize, cap: u32) -> Self {
        let side = cap as usize + 1;
        let total = side.pow(nvars as u32);
        let mut basis: Vec<Vec<u32>> = (0..total)
            .map(|mut i| {
                let mut e = vec![0; nvars];
                for slot in e.iter_mut().rev() {
                    *slot = (i % side) as u32;
                    i /= side;
                }
                e
            })
            .collect();
        basis.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Self {
            nvars,
            cap,
            basis,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, exp: &[u32]) -> Option<usize> {
        self.index.get(exp).copied()
    }

    /// Positions of the monomials that also lie in the window of cap `smaller`.
    pub fn sub_window_positions(&self, smaller: u32) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, e)| e.iter().all(|&x| x <= smaller))
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_order() {
        let w = MonomialWindow::new(2, 2);
        assert_eq!(w.len(), 9);
        assert_eq!(w.basis()[0], vec![0, 0]);
        assert_eq!(w.basis()[1], vec![0, 1]);
        assert_eq!(w.basis()[2], vec![1, 0]);
        assert_eq!(w.basis()[8], vec![2, 2]);
        assert_eq!(w.index_of(&[1, 0]), Some(2));
        assert_eq!(w.index_of(&[3, 0]), None);
        assert_eq!(MonomialWindow::new(3, 1).len(), 8);
        assert_eq!(w.sub_window_positions(0), vec![0]);
    }
}

use super::{DiagramError, LinkDiagram, Result};

/// Dowker–Thistlethwaite code of a knot diagram.
///
/// Passages are numbered 1..=2n along the orientation starting at the first
/// edge of the component. The even partner of each odd passage 1, 3, 5, ...
/// is listed, negated when the even passage runs under. Output is the even
/// numbers separated by single spaces; the crossingless unknot gives "".
pub fn dt_export(d: &LinkDiagram) -> Result<String> {
    if d.num_components() != 1 {
        return Err(DiagramError::NotAKnot(d.num_components()));
    }
    let n = d.num_crossings();
    if n == 0 {
        return Ok(String::new());
    }
    // first[c] = (passage number, under?) of the first visit to crossing c
    let mut first: Vec<Option<(usize, bool)>> = vec![None; n];
    let mut partner = vec![0i64; n + 1];
    let arcs = &d.components()[0].arcs;
    for (i, &arc) in arcs.iter().enumerate() {
        let passage = i + 1;
        let h = d.head(arc).ok_or(DiagramError::NonPlanar)?;
        let under = h.slot == 0;
        match first[h.crossing] {
            None => first[h.crossing] = Some((passage, under)),
            Some((p, p_under)) => {
                if (p + passage) % 2 == 0 {
                    return Err(DiagramError::NonPlanar);
                }
                let (odd, even, even_under) = if p % 2 == 1 { (p, passage, under) } else { (passage, p, p_under) };
                partner[odd.div_ceil(2)] = if even_under { -(even as i64) } else { even as i64 };
            }
        }
    }
    Ok(partner[1..].iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
}

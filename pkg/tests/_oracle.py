"""Reference values computed once with mpmath at 30 digits, then frozen.

ETA_DERIV[(a, t, k)] is the k-th t-derivative of eta_a at t, from
mpmath.nsum of the term-by-term series. Away from t = 1 each value was also
cross-checked against the Hurwitz-zeta form
(2a)^-t [zeta(t, 1/(2a)) - zeta(t, (a+1)/(2a))] differentiated in t; the two
agreed to 1e-20.

RICCATI[(a, t)] = (phi, phi_e, phi_as, ratio) from the same nsum values.
"""

ETA_DERIV = {
    (0.5, 0.5, 0): 0.55875769698513860616,
    (0.5, 0.5, 1): 0.11394963512189363083,
    (0.5, 0.5, 2): -0.01534651377878922332,
    (0.5, 0.5, 3): -0.0058406297262988188319,
    (0.5, 1, 0): 0.61370563888010938117,
    (0.5, 1, 1): 0.10565052579862582599,
    (0.5, 1, 2): -0.017648810576760180572,
    (0.5, 1, 3): -0.0034288041538251259844,
    (0.5, 2, 0): 0.71013186630354712706,
    (0.5, 2, 1): 0.086959588300057715176,
    (0.5, 2, 2): -0.019131100437409386817,
    (0.5, 2, 3): 0.00018261779696581204512,
    (0.5, 4, 0): 0.84747472804406531878,
    (0.5, 4, 1): 0.051763845082509228088,
    (0.5, 4, 2): -0.015152601911557843703,
    (0.5, 4, 3): 0.0029809632336929392299,
    (1, 0.5, 0): 0.60489864342163037025,
    (1, 0.5, 1): 0.19328883163928273896,
    (1, 0.5, 2): -0.067275955837187229077,
    (1, 0.5, 3): -0.0029937471686673334718,
    (1, 1, 0): 0.69314718055994530942,
    (1, 1, 1): 0.15986890374243097176,
    (1, 1, 2): -0.065372592558898599146,
    (1, 1, 3): 0.0094139502324930897352,
    (1, 2, 0): 0.82246703342411321824,
    (1, 2, 1): 0.10131657816350450189,
    (1, 2, 2): -0.050375577025452467232,
    (1, 2, 3): 0.017796701498469380675,
    (1, 4, 0): 0.94703282949724591758,
    (1, 4, 1): 0.033478804578565066386,
    (1, 4, 2): -0.020016203678059707255,
    (1, 4, 3): 0.01082061106984403819,
    (2, 0.5, 0): 0.66769145718960917666,
    (2, 0.5, 1): 0.28186474831561178191,
    (2, 0.5, 2): -0.20112947040767821945,
    (2, 0.5, 3): 0.087384300463178607458,
    (2, 1, 0): 0.78539816339744830962,
    (2, 1, 1): 0.19290131679691242936,
    (2, 1, 2): -0.1541417244293358834,
    (2, 1, 3): 0.094882859205603700142,
    (2, 2, 0): 0.91596559417721901505,
    (2, 2, 1): 0.081580736116592795103,
    (2, 2, 2): -0.074415212435678234968,
    (2, 2, 3): 0.060832099220007404138,
    (2, 4, 0): 0.98894455174110533611,
    (2, 4, 1): 0.011570547924511641651,
    (2, 4, 2): -0.011847479207955116639,
    (2, 4, 3): 0.011735727461849672688,
    (10, 0.5, 0): 0.81986796360002122501,
    (10, 0.5, 1): 0.37730134837427335685,
    (10, 0.5, 2): -0.75678782054129972554,
    (10, 0.5, 3): 1.4210475779595143347,
    (10, 1, 0): 0.93809428703288482665,
    (10, 1, 1): 0.13454067404642764634,
    (10, 1, 2): -0.2841784901950115941,
    (10, 1, 3): 0.57658552201818188854,
    (10, 2, 0): 0.99332879520264800837,
    (10, 2, 1): 0.015159249768865500465,
    (10, 2, 2): -0.033964424377182148073,
    (10, 2, 3): 0.074704552835152436397,
    (10, 4, 0): 0.99993601105831471173,
    (10, 4, 1): 0.00015091853224940611105,
    (10, 4, 2): -0.00035446141776192749764,
    (10, 4, 3): 0.0008281691314444925852,
}

RICCATI = {
    (1, 0.5): (0.319539205024395, 0.0556092798097863, 0.490129071734274, 5.74614895422834),
    (1, 1): (0.23064207462156, 0.0471563575473889, 0.346573590279973, 4.89100699496947),
    (1, 2): (0.123186187465413, 0.0306246785453076, 0.173286795139986, 4.02244834286717),
    (1, 4): (0.0353512608389068, 0.0105678510050627, 0.0433216987849966, 3.34517025476335),
    (1, 30): (6.45538282699148e-10, 2.23725438955684e-10, 6.45543616786548e-10, 2.88540402786747),
    (2, 0.5): (0.422148202257991, 0.150615578679302, 0.634284100597564, 2.80281897768922),
    (2, 1): (0.245609584777314, 0.0981296695185503, 0.366204096222703, 2.502908508531),
    (2, 2): (0.089065284367885, 0.0406211832129584, 0.122068032074234, 2.19258222738014),
    (2, 4): (0.0116998955140012, 0.00598996131132772, 0.0135631146749149, 1.95325059810909),
    (2, 30): (5.33588757176825e-15, 2.93103538730037e-15, 5.33588929980274e-15, 1.82047872737656),
    (10, 0.5): (0.460197696611479, 0.461530303744436, 0.7229926278581, 0.99711263351042),
    (10, 1): (0.143419138039918, 0.151465846303064, 0.217990479345306, 0.946874437640244),
    (10, 2): (0.0152610594216922, 0.0170962648728275, 0.0198173163041188, 0.892654596498902),
    (10, 4): (0.000150928189984554, 0.000177242050412192, 0.000163779473587758, 0.851537147271526),
    (10, 30): (1.37419908395736e-31, 1.64759274153151e-31, 1.37419909051784e-31, 0.834064783922254),
    (11, 0.5): (0.454945835038481, 0.476288096537632, 0.717330761583097, 0.955190436934498),
    (11, 1): (0.136171466711648, 0.149818760779319, 0.207075554149, 0.908907976566609),
    (11, 2): (0.0133235042936733, 0.0155133180107126, 0.0172562961790833, 0.858842981525478),
    (11, 4): (0.000110620854744289, 0.000134760043270104, 0.000119835390132523, 0.820872805172435),
    (11, 30): (1.04682164767925e-32, 1.30062703529547e-32, 1.04682165208954e-32, 0.804859209651474),
}

# first zero of eta'' + 2 eta' (mpmath findroot on the nsum values)
CROSSING = {10.0: 0.477657958126199487, 11.0: 0.182790003887459473}

# exp of the integral of eta''/eta over [1, 30] at a = 1 (mpmath quad)
PERTURBATION_1_1_30 = 0.828403625356771388

CATALAN = 0.915965594177219015
EULER_GAMMA = 0.577215664901532861

# eta'' + 2 eta' at the published threshold locations (mpmath diff of the
# Hurwitz-zeta form); both are far from zero
CURVATURE_AT_PUBLISHED_TSTAR = {
    (1.0, 0.4448): 0.326933406915042012,
    (2.0, 0.4156): 0.390001356974550148,
}

# eta''/eta' and its ratio to -eta'''/(2 eta') at a = 1, t = 30 (mpmath nsum)
QUOTIENT2_1_30 = (-0.693143830355761740691, 2.88541218375301836071)

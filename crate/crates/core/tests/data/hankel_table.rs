// Reference J_n, Y_n (n = 0, 1, 2) from 40-digit arithmetic (mpmath), rounded to f64.
// (z, Re H0, Im H0, Re H1, Im H1, Re H2, Im H2)
pub const HANKEL_TABLE: &[(f64, [f64; 6])] = &[
    (1e-08, [1.0, -11.80077387717953, 5e-09, -63661977.236758195, 1.25e-17, -1.2732395447351626e+16]),
    (1.4677992676220705e-08, [1.0, -11.556462010886387, 7.3389963381103524e-09, -43372400.19195184, 2.6930433625398582e-17, -5909854453356942.0]),
    (2.1544346900318822e-08, [0.9999999999999999, -11.312150144593245, 1.0772173450159411e-08, -29549272.26678489, 5.801986042015965e-17, -2743111443897841.0]),
    (3.162277660168379e-08, [0.9999999999999998, -11.067838278300101, 1.5811388300841893e-08, -20131684.841794994, 1.2499999999999999e-16, -1273239544735163.0]),
    (4.641588833612782e-08, [0.9999999999999994, -10.823526412006954, 2.3207944168063904e-08, -13715557.219489435, 2.693043362539858e-16, -590985445335694.5]),
    (6.812920690579608e-08, [0.9999999999999989, -10.579214545713805, 3.406460345289802e-08, -9344300.356349023, 5.801986042015962e-16, -274311144389784.44]),
    (1e-07, [0.9999999999999974, -10.334902679420647, 4.999999999999994e-08, -6366197.723676346, 1.2499999999999988e-15, -127323954473516.6]),
    (1.4677992676220674e-07, [0.9999999999999946, -10.090590813127475, 7.338996338110317e-08, -4337240.019195949, 2.693043362539842e-15, -59098544533569.984]),
    (2.1544346900318822e-07, [0.9999999999999883, -9.84627894683427, 1.0772173450159349e-07, -2954927.226679572, 5.801986042015943e-15, -27431114438978.727]),
    (3.162277660168379e-07, [0.999999999999975, -9.601967080540993, 1.5811388300841697e-07, -2013168.48418105, 1.2499999999999895e-14, -12732395447351.947]),
    (4.6415888336127725e-07, [0.9999999999999462, -9.357655214247568, 2.3207944168063238e-07, -1371555.721951166, 2.6930433625397988e-14, -5909854453357.284]),
    (6.812920690579608e-07, [0.999999999999884, -9.113343347953831, 3.406460345289607e-07, -934430.035638078, 5.801986042015742e-14, -2743111443898.1587]),
    (1e-06, [0.99999999999975, -8.869031481659444, 4.999999999999375e-07, -636619.772372175, 1.2499999999998957e-13, -1273239544735.4812]),
    (1.4677992676220675e-06, [0.9999999999994614, -8.62471961536369, 7.338996338108361e-07, -433724.0019260817, 2.6930433625393637e-13, -590985445336.0149]),
    (2.1544346900318822e-06, [0.9999999999988396, -8.380407749065071, 1.0772173450153162e-06, -295492.7226772181, 5.801986042013721e-13, -274311144390.1024]),
    (3.162277660168379e-06, [0.9999999999975, -8.136095882760461, 1.5811388300822133e-06, -201316.84843131574, 1.2499999999989583e-12, -127323954473.8346]),
    (4.641588833612773e-06, [0.9999999999946139, -7.8917840164433155, 2.3207944168001365e-06, -137155.57221394597, 2.6930433625350125e-12, -59098544533.88796]),
    (6.8129206905796085e-06, [0.9999999999883961, -7.647472150099979, 3.40646034527004e-06, -93443.00359062164, 5.801986041993524e-12, -27431114439.296715]),
    (9.999999999999999e-06, [0.999999999975, -7.40316028370197, 4.9999999999374995e-06, -63661.97727536549, 1.249999999989583e-11, -12732395447.669939]),
    (1.4677992676220675e-05, [0.9999999999461391, -7.158848417189953, 7.338996337912695e-06, -43372.40024682668, 2.6930433624914973e-11, -5909854453.675276]),
    (2.1544346900318823e-05, [0.9999999998839603, -6.914536550440446, 1.0772173449534411e-05, -29549.27234469824, 5.801986041791546e-11, -2743111444.2161503]),
    (3.1622776601683795e-05, [0.99999999975, -6.6702246831968255, 1.5811388298865475e-05, -20131.684952293246, 1.2499999998958335e-10, -1273239545.0534725]),
    (4.641588833612772e-05, [0.9999999994613913, -6.425912814926454, 2.3207944161813863e-05, -13715.557376008748, 2.6930433620563484e-10, -590985445.6540065]),
    (6.812920690579608e-05, [0.9999999988396028, -6.181600944525408, 3.406460343313381e-05, -9344.300577765536, 5.801986039771763e-10, -274311144.70809394]),
    (0.0001, [0.9999999975, -5.937289069709337, 4.99999999375e-05, -6366.198036455761, 1.2499999989583335e-09, -127323954.79182614]),
    (0.00014677992676220676, [0.9999999946139133, -5.692977185759209, 7.338996318346102e-05, -4337.240460363323, 2.693043357704859e-09, -59098544.85187956]),
    (0.00021544346900318823, [0.999999988396028, -5.448665282944346, 0.00010772173387659412, -2954.9278479070485, 5.801986019573938e-09, -27431114.757288326]),
    (0.00031622776601683794, [0.9999999750000002, -5.204353341240351, 0.00015811388103199544, -2013.16935738922, 1.2499999895833333e-08, -12732395.765661584]),
    (0.00046415888336127724, [0.9999999461391335, -4.960041319530507, 0.00023207943543063867, -1371.5569469457553, 2.6930433141899637e-08, -5909854.771666998]),
    (0.0006812920690579609, [0.9999998839602825, -4.715729133593271, 0.0003406460147647454, -934.4317504603976, 5.8019858175956894e-08, -2743111.7622080278]),
    (0.001, [0.9999997500000156, -4.471416611375923, 0.0004999999375000026, -636.6221672311394, 1.2499998958333365e-07, -1273239.8630456675]),
    (0.0014677992676220676, [0.9999994613914001, -4.227103402447594, 0.0007338994361686978, -433.72733779759625, 2.6930428790410433e-07, -590985.7636468497]),
    (0.002154434690031882, [0.9999988396031282, -3.9827887954456043, 0.001077216720016062, -295.49735588873784, 5.801983797813488e-07, -274311.46270225814]),
    (0.0031622776601683794, [0.9999975000015625, -3.7384713517580046, 0.0015811368536614756, -201.3232627606211, 1.249998958333659e-06, -127324.27278867237]),
    (0.004641588833612773, [0.9999946139205274, -3.494148174450715, 0.002320788166811997, -137.16442015109612, 2.6930385275547346e-06, -59098.86285415159]),
    (0.006812920690579608, [0.999988396061579, -3.2498134584750487, 0.003406440581092652, -93.45515830783458, 5.801963600020497e-06, -27431.432770490374]),
    (0.01, [0.9999750001562495, -3.005455637083646, 0.004999937500260416, -63.67859628206065, 1.2499895833658854e-05, -12732.713800775047]),
    (0.014677992676220676, [0.9999461398579931, -2.7610518156330106, 0.007338798697530767, -43.39500025629641, 2.6929950129816837e-05, -5910.172850460964]),
    (0.021544346900318822, [0.9998839636454204, -2.516557033509171, 0.010771548462246766, -29.579811816361538, 5.801761624990937e-05, -2743.429927510314]),
    (0.03162277660168379, [0.999750015624566, -2.271883834459773, 0.015809411959653557, -20.172644835278266, 0.00012498958365884873, -1273.5581983477703]),
    (0.046415888336127725, [0.9994614638479774, -2.0268640933143565, 0.02320169472908938, -13.769999544007419, 0.0002692559896253927, -591.3044298933426]),
    (0.06812920690579607, [0.9988399393786175, -1.7811794152773293, 0.03404484303954631, -9.415863302200243, 0.00057997421647095, -274.63076576470365]),
    (0.1, [0.99750156206604, -1.5342386513503667, 0.049937526036242, -6.4589510947020266, 0.001248958658799919, -127.64478324269015]),
    (0.14677992676220675, [0.9946211614186558, -1.2849741059649697, 0.07319249836754074, -4.455254579570663, 0.0026882116282112402, -59.4216181079482]),
    (0.21544346900318823, [0.9884296475866852, -1.0315354981654783, 0.10709794208050848, -3.1012855221404676, 0.005779576540908074, -27.758249000658886]),
    (0.31622776601683794, [0.975155816649713, -0.7709303079247533, 0.15614567743386049, -2.1879025720164273, 0.012396158312196683, -13.066580544300221]),
    (0.46415888336127725, [0.9468600553059419, -0.4989392550657307, 0.22588529560533313, -1.5675587482555338, 0.026450178334532053, -6.255466636743636]),
    (0.5, [0.9384698072408129, -0.44451873350670656, 0.2422684576748739, -1.471472392670243, 0.03060402345868264, -5.441370837174266]),
    (0.6812920690579608, [0.8872834939065951, -0.21155038062849527, 0.32126036366234895, -1.1297322611458458, 0.05580795909259657, -3.104889990409301]),
    (1.0, [0.7651976865579666, 0.08825696421567696, 0.4400505857449335, -0.7812128213002887, 0.11490348493190047, -1.6506826068162543]),
    (1.4677992676220675, [0.5297188809955158, 0.3688303216335264, 0.5532239943803335, -0.43358510783152554, 0.2240953585722601, -0.9596265120880458]),
    (2.0, [0.22389077914123567, 0.5103756726497451, 0.5767248077568734, -0.10703243154093754, 0.35283402861563773, -0.6174081041906827]),
    (2.1544346900318776, [0.1358367060367517, 0.5203084426103024, 0.5620561448339175, -0.022454647044642374, 0.3859299991081615, -0.5411534904073281]),
    (3.1622776601683795, [-0.31004478898638266, 0.32089778606786884, 0.27642078213653665, 0.3632185910150255, 0.4848686418177108, -0.09117817884293876]),
    (4.641588833612772, [-0.28526378791862333, -0.23459762864895867, -0.2662909156754586, 0.2618080457796301, 0.1705225106443105, 0.347407295840377]),
    (5.0, [-0.1775967713143383, -0.30851762524903376, -0.32757913759146523, 0.14786314339122683, 0.046565116277752214, 0.36766288260552454]),
    (6.8129206905795945, [0.2939130007847651, -0.08255182448512684, -0.06130623804337142, -0.3007082419787541, -0.3119100510449101, -0.005724042983740479]),
    (8.0, [0.1716508071375539, 0.22352148938756622, 0.23463634685391463, -0.1580604617312475, -0.11299172042407525, -0.2630366048203781]),
    (10.0, [-0.24593576445134835, 0.055671167283599395, 0.04347274616886144, 0.24901542420695388, 0.2546303136851206, -0.0058680824422086145]),
    (11.9, [0.025049441699589645, -0.22983321394337505, -0.22898324966192404, -0.03471149833403061, -0.06353402147470293, 0.22399934867715143]),
    (12.0, [0.047689310796833535, -0.22523731263436145, -0.2234471044906276, -0.05709921826089652, -0.08493049487860481, 0.21572077625754535]),
    (12.1, [0.06966677360680731, -0.2184383805509255, -0.2157489733769248, -0.07873693145139575, -0.10532776094183621, 0.20542401171598404]),
    (14.677992676220676, [0.052128332395764865, 0.2015690083024993, 0.20345883074042526, -0.04529984637318101, -0.024405354843113257, -0.20774149351521776]),
    (15.0, [-0.014224472826780772, 0.20546429603891828, 0.20510403861352275, 0.02107362803687351, 0.04157167797525047, -0.20265447896733513]),
    (19.99, [0.16768479902327926, 0.06098196181483831, 0.0651925781421661, -0.16621268550210405, -0.16116227994952578, -0.07761154515671966]),
    (20.0, [0.16702466434058316, 0.06264059680938383, 0.06683312417585005, -0.1655116143625213, -0.16034135192299814, -0.07919175824563596]),
    (20.01, [0.1663481614896891, 0.06429214025167455, 0.06846618525879446, -0.16479438815068465, -0.15950496456227337, -0.08076334346513628]),
    (21.54434690031878, [-0.05615042805509994, 0.1624452909834369, 0.16118645364973805, 0.05993350393985474, 0.07111365292290533, -0.15688155733050654]),
    (25.0, [0.09626678327595811, -0.12724943226800614, -0.1253502495802899, -0.09882996478323741, -0.1062948032423813, 0.11934303508534715]),
    (31.622776601683793, [0.11848041051601226, -0.07804847807478126, -0.07618534601963468, -0.11972894482370657, -0.12329879487101403, 0.07047615472495046]),
    (33.3, [0.06333848594752126, 0.12289749913503732, 0.12386214790148009, -0.061500722807785735, -0.055899317905390315, -0.12659123624061006]),
    (46.41588833612773, [-0.00874048901297063, 0.11678341456899367, 0.11669604226997873, 0.009998861206023623, 0.01376876904608802, -0.11635257670013224]),
    (68.12920690579594, [-0.019419097174257494, -0.09469396742459958, -0.09483902572908073, 0.018724698687864808, 0.01663500412411478, 0.09524364940500941]),
    (100.0, [0.019985850304223122, -0.07724431336508315, -0.07714535201411216, -0.020372312002759792, -0.021528757344505364, 0.07683686712502795]),
    (146.77992676220674, [0.005944194819712091, 0.06558872924904878, 0.06560935819535685, -0.005720806492293215, -0.0050502121118224975, -0.06566668005088508]),
    (215.44346900318777, [0.028022853669887125, 0.04657938322280258, 0.04664454359095809, -0.027914828543786817, -0.02758984408452561, -0.04683852153572469]),
    (316.2277660168379, [0.012748013916497278, 0.043019229525249884, 0.04303943962786713, -0.012680010647065936, -0.012475808599614538, -0.04309942495404971]),
    (464.1588833612773, [-0.0004333127779034402, -0.037031974916508885, -0.037032463173751765, 0.0003934215898980975, 0.00027374473126572194, 0.037033670118751055]),
    (681.2920690579595, [-0.0105300194117698, 0.02869753430484007, 0.028689814059956485, 0.010551083346114128, 0.010614241187900636, -0.028666560560023976]),
    (1000.0, [0.024786686152420176, 0.0047159179776228135, 0.004728311907089524, -0.024784331292351778, -0.024777229528605997, -0.0047654866402075165]),
    (1467.7992676220674, [-0.02070020473481859, 0.0022859354084326356, 0.0022788840992235848, 0.020700984630582422, 0.020703309906144798, -0.0022577285751316225]),
    (2154.434690031878, [0.0015016808734751865, -0.017124183754688653, -0.017123835706610264, -0.0015056550847070626, -0.001517577234396071, 0.017122786028322963]),
    (3162.2776601683795, [0.007059685345331139, 0.012307627258184442, 0.012308743646264622, -0.00705773942688943, -0.007051900612319675, -0.012312090964528632]),
    (4641.588833612773, [-0.009171896909985447, -0.007282298982582133, -0.007283287037466276, 0.009171112501332202, 0.009168758636735252, 0.007286250695165945]),
    (6812.9206905795945, [0.003838961950096381, 0.008871604953871246, 0.008871886719038284, -0.0038383108736756823, -0.003836357520330655, -0.008872731727849104]),
    (10000.0, [-0.0070961603533888015, 0.0036478055589866058, 0.0036474507555295803, 0.007096342752536495, 0.0070968898435399075, -0.0036463862904360985]),
];
